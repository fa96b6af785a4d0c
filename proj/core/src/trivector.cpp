#include "k3g16/trivector.hpp"

#include <array>

#include "k3g16/errors.hpp"
#include "k3g16/rng.hpp"
#include "k3g16/xquad.hpp"

namespace k3g16 {

namespace {

Elem pfaffian_rec(const Field& f, const FqMatrix& a, std::vector<std::size_t>& idx) {
  if (idx.empty()) return 1;
  const std::size_t first = idx[0];
  Elem acc = 0;
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const Elem e = a(first, idx[j]);
    if (e == 0) continue;
    std::vector<std::size_t> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t k = 1; k < idx.size(); ++k)
      if (k != j) rest.push_back(idx[k]);
    const Elem term = f.mul(e, pfaffian_rec(f, a, rest));
    acc = (j % 2 == 1) ? f.add(acc, term) : f.sub(acc, term);
  }
  return acc;
}

// Rank of a small square matrix held in a flat array (destroyed).
std::size_t small_rank(const Field& f, Elem* m, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && m[piv * n + c] == 0) ++piv;
    if (piv == n) continue;
    if (piv != r)
      for (std::size_t k = 0; k < n; ++k) std::swap(m[piv * n + k], m[r * n + k]);
    const Elem inv = f.inv(m[r * n + c]);
    for (std::size_t i = r + 1; i < n; ++i) {
      const Elem e = m[i * n + c];
      if (e == 0) continue;
      const Elem s = f.mul(e, inv);
      for (std::size_t k = c; k < n; ++k) m[i * n + k] = f.sub(m[i * n + k], f.mul(s, m[r * n + k]));
    }
    ++r;
  }
  return r;
}

// Univariate restriction (t = 1) of the sub-Pfaffians along t·a + s·b, fitted from 6 samples.
std::vector<upoly::Poly> restricted_quartics(const Trivector& t, std::span<const Elem> a, std::span<const Elem> b) {
  const Field& f = t.field();
  constexpr std::size_t kSamples = 6;
  std::vector<Vec> values;
  std::vector<Vec> pts;
  for (std::size_t s = 0; s < kSamples; ++s) {
    const Vec v = axpy(f, s, b, a);
    values.push_back(sub_pfaffians(t.contract(v)));
    pts.push_back({static_cast<Elem>(s)});
  }
  // Vandermonde solve for degree ≤ 4, checked on the sixth sample.
  FqMatrix vand(f, 5, 5);
  for (std::size_t s = 0; s < 5; ++s)
    for (std::size_t e = 0; e < 5; ++e) vand(s, e) = f.pow(s, e);
  const auto inv = inverse(vand);
  require(inv.has_value(), ErrorCode::internal, "Vandermonde matrix is singular");
  std::vector<upoly::Poly> out;
  const std::size_t count = values.front().size();
  for (std::size_t c = 0; c < count; ++c) {
    Vec y(5);
    for (std::size_t s = 0; s < 5; ++s) y[s] = values[s][c];
    upoly::Poly coeffs = inv->apply(y);
    require(upoly::eval(f, coeffs, kSamples - 1) == values[kSamples - 1][c], ErrorCode::internal,
            "sub-Pfaffian restriction exceeds degree 4");
    out.push_back(std::move(coeffs));
  }
  return out;
}

}  // namespace

Elem pfaffian(const FqMatrix& a) {
  require(a.rows() == a.cols(), ErrorCode::invalid_argument, "pfaffian needs a square matrix");
  if (a.rows() % 2 == 1) return 0;
  std::vector<std::size_t> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return pfaffian_rec(a.field(), a, idx);
}

Vec sub_pfaffians(const FqMatrix& a) {
  const std::size_t n = a.rows();
  Vec out;
  for (const auto& [i, j] : pair_list(n)) {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i && k != j) keep.push_back(k);
    out.push_back(pfaffian_rec(a.field(), a, keep));
  }
  return out;
}

PeskineTest peskine_test(const Trivector& t, std::span<const Elem> v) {
  require(!is_zero(v), ErrorCode::invalid_argument, "peskine test at the zero vector");
  const FqMatrix c = t.contract(v);
  PeskineTest r;
  r.rank = rank(c);
  if (r.rank <= 6) r.kernel = kernel(c);
  return r;
}

Subspace congruence_line_through(const Trivector& t, std::span<const Elem> q) {
  const FqMatrix c = t.contract(q);
  const std::size_t r = rank(c);
  require(r == 8, ErrorCode::point_on_peskine,
          "contraction has rank " + std::to_string(r) + ", no unique congruence line");
  return kernel(c);
}

bool is_congruence_line(const Trivector& t, const Subspace& v2) {
  if (v2.dim() != 2) return false;
  return is_zero(t.contract(v2.vector(0)).apply(v2.vector(1)));
}

Secancy line_secancy(const Trivector& t, std::span<const Elem> a, std::span<const Elem> b) {
  const Field& f = t.field();
  const auto quartics = restricted_quartics(t, a, b);
  Secancy r;
  std::vector<Vec> rows;
  for (const upoly::Poly& q : quartics)
    if (!is_zero(q)) rows.push_back(q);
  require(!rows.empty(), ErrorCode::degenerate_line, "line lies in the Peskine locus");
  r.form_rank = rank(FqMatrix::from_rows(f, rows, 5));
  r.quartic = binary_form_gcd(f, rows);
  r.degree = r.quartic.size() - 1;
  if (r.degree > 0) {
    r.roots = binary_form_roots(f, r.quartic);
    for (const BinaryRoot& root : r.roots.roots) {
      if (!root.rational()) continue;
      r.rational_points.push_back(root.at_infinity ? normalize_projective(f, b)
                                                   : normalize_projective(f, axpy(f, root.s.a, b, a)));
    }
  }
  return r;
}

Secancy line_secancy(const Trivector& t, const Subspace& v2) {
  require(v2.dim() == 2, ErrorCode::invalid_argument, "secancy needs a line");
  return line_secancy(t, v2.vector(0), v2.vector(1));
}

std::vector<PeskinePoint> peskine_points_on_slice(const Trivector& t, const FqMatrix& slice) {
  const Field& f = t.field();
  const std::size_t n = t.dim();
  const std::size_t k = slice.rows();
  std::vector<FqMatrix> parts;
  for (std::size_t i = 0; i < k; ++i) parts.push_back(t.contract(slice.row(i)));
  std::vector<PeskinePoint> out;
  std::vector<Elem> m(n * n);
  for_each_projective_point(f, k, [&](const Vec& y) {
    std::fill(m.begin(), m.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (y[i] == 0) continue;
      const auto& d = parts[i].data();
      for (std::size_t e = 0; e < n * n; ++e) m[e] = f.add(m[e], f.mul(y[i], d[e]));
    }
    if (small_rank(f, m.data(), n) > 6) return;
    const Vec v = normalize_projective(f, slice.apply_left(y));
    out.push_back({v, kernel(t.contract(v))});
  });
  return out;
}

PeskineSample peskine_sample(const Trivector& t, PeskineStrategy strategy, std::size_t n, Rng& rng,
                             std::size_t budget) {
  const Field& f = t.field();
  PeskineSample out;
  switch (strategy) {
    case PeskineStrategy::slice: {
      if (budget == 0) budget = 8;
      while (out.points.size() < n && out.trials < budget) {
        ++out.trials;
        for (PeskinePoint& p : peskine_points_on_slice(t, rng.matrix(f, 4, t.dim()))) {
          if (out.points.size() == n) break;
          out.points.push_back(std::move(p));
        }
      }
      break;
    }
    case PeskineStrategy::rejection: {
      if (budget == 0) budget = 200000 * n;
      while (out.points.size() < n && out.trials < budget) {
        ++out.trials;
        const Vec v = rng.nonzero_vector(f, t.dim());
        PeskineTest pt = peskine_test(t, v);
        if (pt.kernel) out.points.push_back({normalize_projective(f, v), *pt.kernel});
      }
      break;
    }
    case PeskineStrategy::secant: {
      if (budget == 0) budget = 50 * n + 50;
      while (out.points.size() < n && out.trials < budget) {
        ++out.trials;
        Subspace line;
        try {
          line = congruence_line_through(t, rng.nonzero_vector(f, t.dim()));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::point_on_peskine) throw;
          continue;
        }
        const Secancy s = line_secancy(t, line);
        for (const Vec& v : s.rational_points) {
          if (out.points.size() == n) break;
          PeskineTest pt = peskine_test(t, v);
          require(pt.kernel.has_value(), ErrorCode::internal, "secancy root is not a Peskine point");
          out.points.push_back({v, *pt.kernel});
        }
      }
      break;
    }
  }
  return out;
}

SliceDegree peskine_slice_degree(const Trivector& t, Rng& rng, unsigned cap) {
  const Field& f = t.field();
  SliceDegree r;
  r.slice = rng.matrix(f, 4, t.dim());
  std::vector<FqMatrix> parts;
  for (std::size_t i = 0; i < 4; ++i) parts.push_back(t.contract(r.slice.row(i)));
  constexpr std::size_t kPoints = 60;
  std::vector<Vec> pts;
  FqMatrix values(f, kPoints, 45);
  for (std::size_t s = 0; s < kPoints; ++s) {
    const Vec y = rng.vector(f, 4);
    FqMatrix m(f, t.dim(), t.dim());
    for (std::size_t i = 0; i < 4; ++i) m = m + parts[i].scaled(y[i]);
    const Vec pf = sub_pfaffians(m);
    for (std::size_t c = 0; c < pf.size(); ++c) values(s, c) = pf[c];
    pts.push_back(y);
  }
  const auto fits = interpolate_many(f, 4, 4, pts, values);
  r.interpolation_unique = true;
  std::vector<MPoly> gens;
  for (const Interpolant& it : fits) {
    r.interpolation_unique = r.interpolation_unique && it.unique();
    if (!it.form.is_zero()) gens.push_back(it.form);
  }
  r.hf = zero_dim_degree(gens, rng, cap);
  return r;
}

Subspace perp_space(const Trivector& b) {
  const Field& f = b.field();
  const std::size_t n = b.dim();
  const auto& triples = triple_list(n);
  FqMatrix map(f, n * n, triples.size());
  Vec unit(triples.size(), 0);
  for (std::size_t c = 0; c < triples.size(); ++c) {
    unit[c] = 1;
    const Trivector a = Trivector::from_coeffs(f, n, unit, Variance::dual);
    unit[c] = 0;
    const FqMatrix comp = compose(b, a);
    for (std::size_t e = 0; e < n * n; ++e) map(e, c) = comp.data()[e];
  }
  return kernel(map);
}

Subspace orbit_tangent(const Trivector& t) {
  const Field& f = t.field();
  const std::size_t n = t.dim();
  const auto& triples = triple_list(n);
  std::vector<Vec> rows;
  // h = E_{r s}: h e_s = e_r.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      Vec v(triples.size(), 0);
      for (std::size_t c = 0; c < triples.size(); ++c) {
        const auto& [i, j, k] = triples[c];
        Elem acc = 0;
        if (i == s) acc = f.add(acc, t.at(r, j, k));
        if (j == s) acc = f.add(acc, t.at(i, r, k));
        if (k == s) acc = f.add(acc, t.at(i, j, r));
        v[c] = acc;
      }
      rows.push_back(std::move(v));
    }
  return Subspace::spanned_by(f, triples.size(), rows);
}

std::size_t orbit_tangent_intersection(const Trivector& t, const Subspace& perp) {
  return intersect(orbit_tangent(t), perp).dim();
}

}  // namespace k3g16
