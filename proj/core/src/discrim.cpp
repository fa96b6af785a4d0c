#include "k3g16/discrim.hpp"

#include "k3g16/errors.hpp"
#include "k3g16/rng.hpp"

namespace k3g16 {

namespace {

Elem trace_product(const Field& f, const FqMatrix& a, const FqMatrix& b) {
  Elem acc = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(a(i, j), b(j, i)));
  return acc;
}

// Gram matrices of the slice directions.
std::vector<FqMatrix> slice_grams(const QuadricSystem& sys, const FqMatrix& slice) {
  std::vector<FqMatrix> out;
  for (std::size_t b = 0; b < slice.rows(); ++b) out.push_back(sys.gram_combination(slice.row(b)));
  return out;
}

FqMatrix combine(const Field& f, const std::vector<FqMatrix>& parts, std::span<const Elem> y) {
  FqMatrix m(f, parts.front().rows(), parts.front().cols());
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (y[i] != 0) m = m + parts[i].scaled(y[i]);
  return m;
}

// Interpolates the value columns as forms of degree d in 4 variables; fills the report.
std::vector<MPoly> fit_forms(const Field& f, unsigned d, const std::vector<Vec>& pts, const FqMatrix& values,
                             SliceReport& r) {
  const auto fits = interpolate_many(f, 4, d, pts, values);
  r.interpolation_unique = true;
  std::vector<MPoly> forms;
  for (const Interpolant& it : fits) {
    r.interpolation_unique = r.interpolation_unique && it.unique();
    forms.push_back(it.form);
  }
  r.samples = pts.size();
  return forms;
}

std::vector<MPoly> nonzero_forms(const std::vector<MPoly>& forms, SliceReport& r) {
  std::vector<MPoly> gens;
  for (const MPoly& g : forms)
    if (!g.is_zero()) gens.push_back(g);
  r.generators = gens.size();
  return gens;
}

}  // namespace

DiscValue disc_value_and_grad(const QuadricSystem& sys, std::span<const Elem> u) {
  const Field& f = sys.field();
  const FqMatrix a = sys.gram_combination(u);
  DiscValue out;
  out.value = det(a);
  const FqMatrix adj = adjugate(a);
  for (std::size_t i = 0; i < sys.dim(); ++i) out.gradient.push_back(trace_product(f, adj, sys.gram(i)));
  return out;
}

SliceReport fit1_slice_degree(const QuadricSystem& sys, Rng& rng, unsigned cap) {
  const Field& f = sys.field();
  SliceReport r;
  r.slice = rng.matrix(f, 4, sys.dim());
  const auto parts = slice_grams(sys, r.slice);
  const std::size_t n = parts.front().rows();
  const std::size_t samples = monomial_count(4, 9) + 40;
  std::vector<Vec> pts;
  FqMatrix values(f, samples, n * (n + 1) / 2);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec y = rng.vector(f, 4);
    const FqMatrix adj = adjugate(combine(f, parts, y));
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) values(s, c++) = adj(i, j);
    pts.push_back(y);
  }
  const auto forms = fit_forms(f, 9, pts, values, r);
  // Fresh points: the fitted minors agree with direct cofactors.
  r.identity_checked = true;
  for (int s = 0; s < 20; ++s) {
    const Vec y = rng.vector(f, 4);
    const FqMatrix adj = adjugate(combine(f, parts, y));
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) r.identity_checked = r.identity_checked && forms[c++].evaluate(y) == adj(i, j);
  }
  r.hf = zero_dim_degree(nonzero_forms(forms, r), rng, cap);
  return r;
}

SliceReport sing_slice_degree(const QuadricSystem& sys, Rng& rng, unsigned cap) {
  const Field& f = sys.field();
  SliceReport r;
  r.slice = rng.matrix(f, 4, sys.dim());
  const auto parts = slice_grams(sys, r.slice);
  const std::size_t samples = monomial_count(4, 10) + 40;
  std::vector<Vec> pts;
  FqMatrix partials(f, samples, 4);
  FqMatrix dets(f, samples, 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec y = rng.vector(f, 4);
    const FqMatrix a = combine(f, parts, y);
    const FqMatrix adj = adjugate(a);
    for (std::size_t b = 0; b < 4; ++b) partials(s, b) = trace_product(f, adj, parts[b]);
    dets(s, 0) = det(a);
    pts.push_back(y);
  }
  const auto gens = fit_forms(f, 9, pts, partials, r);
  r.generators = gens.size();
  // The restricted determinant, differentiated symbolically, must give the same partials.
  const Interpolant d = interpolate_many(f, 4, 10, pts, dets).front();
  r.interpolation_unique = r.interpolation_unique && d.unique();
  r.identity_checked = gens.size() == 4;
  for (std::size_t b = 0; b < 4 && r.identity_checked; ++b) r.identity_checked = d.form.derivative(b) == gens[b];
  for (int s = 0; s < 50 && r.identity_checked; ++s) {
    const Vec y = rng.vector(f, 4);
    const FqMatrix adj = adjugate(combine(f, parts, y));
    for (std::size_t b = 0; b < 4; ++b)
      r.identity_checked = r.identity_checked && gens[b].evaluate(y) == trace_product(f, adj, parts[b]);
  }
  r.hf = zero_dim_degree(gens, rng, cap);
  return r;
}

X60Report x60_membership(const QuadricSystem& sys, const SyzygySpace& syz, const XPoint& x, Rng& rng) {
  const Field& f = sys.field();
  const Subspace fiber = vertex_fiber(sys, syz, x.coords);
  X60Report r;
  for (r.tries = 1; r.tries <= 10; ++r.tries) {
    const Vec u = fiber.basis().apply_left(rng.nonzero_vector(f, fiber.dim()));
    const FqMatrix g = sys.gram_combination(u);
    r.gram_rank = rank(g);
    if (r.gram_rank != 9) continue;
    const Subspace k = kernel(g);
    r.vertex_is_x = k.dim() == 1 && k.contains(x.coords);
    const DiscValue dv = disc_value_and_grad(sys, u);
    r.determinant_zero = dv.value == 0;
    r.gradient_zero = is_zero(dv.gradient);
    r.ok = r.vertex_is_x && r.gradient_zero && r.determinant_zero;
    return r;
  }
  fail(ErrorCode::non_generic_point, "no member of rank 9 in the vertex fiber");
}

Fit0Report fit0_sprime_checks(const SyzygySpace& syz, const std::vector<PeskinePoint>& peskine, Rng& rng,
                              std::size_t generic_points, unsigned cap) {
  const Field& f = syz.field();
  Fit0Report r;
  r.slice.slice = rng.matrix(f, 4, 10);
  std::vector<FqMatrix> parts;
  for (std::size_t b = 0; b < 4; ++b) parts.push_back(s_prime_at(syz, r.slice.slice.row(b)));
  const std::size_t samples = monomial_count(4, 8) + 40;
  std::vector<Vec> pts;
  FqMatrix values(f, samples, 45);
  std::vector<std::size_t> cols(syz.dim());
  for (std::size_t a = 0; a < cols.size(); ++a) cols[a] = a;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec y = rng.vector(f, 4);
    const FqMatrix m = combine(f, parts, y);
    std::size_t c = 0;
    for (const auto& [i, j] : pair_list(10)) {
      std::vector<std::size_t> rows;
      for (std::size_t k = 0; k < 10; ++k)
        if (k != i && k != j) rows.push_back(k);
      values(s, c++) = det(m.submatrix(rows, cols));
    }
    pts.push_back(y);
  }
  const auto forms = fit_forms(f, 8, pts, values, r.slice);
  r.slice.hf = zero_dim_degree(nonzero_forms(forms, r.slice), rng, cap);

  for (const PeskinePoint& q : peskine) r.peskine_ranks.push_back(rank(s_prime_at(syz, q.coords)));
  for (std::size_t i = 0; i < generic_points; ++i) {
    ++r.generic_points;
    if (rank(s_prime_at(syz, rng.nonzero_vector(f, 10))) == 8) ++r.generic_rank8;
  }

  // Rank-7 points: F_p points of random P³ slices. M_v q = 0 has a rank-6 solution for every v,
  // so roots of det M_v only ever give Peskine points.
  for (r.rank7_slices_tried = 1; r.rank7_slices_tried <= 12 && !r.rank7_found; ++r.rank7_slices_tried) {
    const FqMatrix slice = rng.matrix(f, 4, 10);
    std::vector<FqMatrix> sp;
    for (std::size_t b = 0; b < 4; ++b) sp.push_back(s_prime_at(syz, slice.row(b)));
    for_each_projective_point(f, 4, [&](const Vec& y) {
      if (r.rank7_found) return;
      if (rank(combine(f, sp, y)) != 7) return;
      r.rank7_found = true;
      r.rank7_point = normalize_projective(f, slice.apply_left(y));
    });
  }
  if (r.rank7_found) --r.rank7_slices_tried;
  bool peskine_ok = true;
  for (std::size_t rk : r.peskine_ranks) peskine_ok = peskine_ok && rk == 6;
  r.ok = r.slice.hf.plateau && r.slice.hf.degree == 120 && peskine_ok && r.generic_rank8 == r.generic_points &&
         r.rank7_found;
  return r;
}

ProbeReport conjecture_probes(const QuadricSystem& sys, const std::vector<PeskinePoint>& t1_peskine,
                              const std::vector<XPoint>& points) {
  const Field& f = sys.field();
  ProbeReport r;
  r.degree_arithmetic = 150 + 15 + 60 == 225;
  r.skipped = t1_peskine.empty();
  for (const PeskinePoint& q : t1_peskine) r.t1_peskine_gram_ranks.push_back(rank(sys.gram_combination(q.coords)));
  // Chords of X: vanishing order of det J along the chord at one endpoint.
  for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
    const Vec& a = points[i].coords;
    const Vec& b = points[i + 1].coords;
    std::vector<Vec> pts;
    Vec vals;
    for (Elem s = 0; s <= 10; ++s) {
      pts.push_back({1, s});
      vals.push_back(det(sys.jacobian(axpy(f, s, b, a))));
    }
    const Interpolant it = interpolate(f, 2, 10, pts, vals);
    // Coefficient of s^e t^{10-e} sits at the monomial x0^{10-e} x1^e.
    std::size_t order = 0;
    Exponents e = {10, 0};
    while (order <= 10 && it.form.coeff(e) == 0) {
      ++order;
      if (order <= 10) e = {static_cast<std::uint8_t>(10 - order), static_cast<std::uint8_t>(order)};
    }
    r.chord_endpoint_orders.push_back(order);
    ++r.chords;
  }
  return r;
}

}  // namespace k3g16
