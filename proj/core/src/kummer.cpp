#include "k3g16/kummer.hpp"

#include <array>
#include <algorithm>

#include "k3g16/cover.hpp"
#include "k3g16/errors.hpp"
#include "k3g16/rng.hpp"
#include "k3g16/xquad.hpp"

namespace k3g16 {

namespace {

Elem quad_value(const Field& f, const FqMatrix& g, std::span<const Elem> y) {
  Elem acc = 0;
  for (std::size_t a = 0; a < g.rows(); ++a) {
    if (y[a] == 0) continue;
    Elem row = 0;
    for (std::size_t b = 0; b < g.cols(); ++b) row = f.add(row, f.mul(g(a, b), y[b]));
    acc = f.add(acc, f.mul(y[a], row));
  }
  return acc;
}

Elem form_value(const Field& f, const Vec& dense, unsigned d, std::span<const Elem> z) {
  return dot(f, dense, monomial_values(f, monomial_basis(z.size(), d), z));
}

// det of a 4 × 4 matrix of forms by the Leibniz expansion.
MPoly det4(const Field& f, const std::array<std::array<MPoly, 4>, 4>& m) {
  std::array<std::size_t, 4> perm{0, 1, 2, 3};
  MPoly out(f, 4, 4);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    MPoly term = m[0][perm[0]] * m[1][perm[1]] * m[2][perm[2]] * m[3][perm[3]];
    out = inversions % 2 ? out - term : out + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

Vec SixSecantFrame::map(std::span<const Elem> y) const {
  const Field& f = embed.field();
  Vec z(4);
  for (std::size_t j = 0; j < 4; ++j) z[j] = quad_value(f, restricted_grams[j], y);
  return z;
}

Vec SixSecantFrame::target_coords(std::span<const Elem> v) const {
  Vec z(4);
  for (std::size_t j = 0; j < 4; ++j) z[j] = v[chosen[j]];
  return z;
}

SixSecantFrame six_secant_frame(const QuadricSystem& sys, const SyzygySpace& syz, const PeskinePoint& q, Rng& rng) {
  const Field& f = sys.field();
  SixSecantFrame fr;
  fr.q = q;
  const FqMatrix sp = s_prime_at(syz, q.coords);
  require(rank(sp) == 6, ErrorCode::not_on_peskine, "rank of s' at q is not 6");
  fr.pq = kernel(sp.transpose());
  require(fr.pq.dim() == 4, ErrorCode::internal, "curve span is not a P3");
  fr.embed = fr.pq.basis().transpose();

  const std::vector<FqMatrix> grams = sys.restricted_grams(fr.pq.basis());
  FqMatrix dense(f, 0, monomial_count(4, 2));
  for (const FqMatrix& g : grams) dense.append_row(MPoly::from_gram(g).dense());
  fr.restriction_kernel = kernel(dense.transpose());
  RowReducer red(f, dense.cols());
  for (std::size_t i = 0; i < grams.size() && fr.chosen.size() < 4; ++i)
    if (red.insert(dense.row(i))) fr.chosen.push_back(i);
  require(fr.chosen.size() == 4 && fr.restriction_kernel.dim() == 6, ErrorCode::non_generic_point,
          "restriction to the curve span does not have rank 4");
  for (std::size_t i : fr.chosen) {
    fr.restricted_grams.push_back(grams[i]);
    fr.restricted.push_back(MPoly::from_gram(grams[i]));
  }

  const Subspace e = fr.restriction_kernel.annihilator();
  fr.annihilator_ok = e == q.kernel4;
  const FqMatrix a = e.basis().submatrix({0, 1, 2, 3}, fr.chosen);
  const auto inv = inverse(a);
  require(inv.has_value(), ErrorCode::internal, "chosen quadrics do not give coordinates on E");
  fr.target = *inv * e.basis();

  fr.image_ok = true;
  for (int s = 0; s < 5; ++s) {
    const Vec y = rng.nonzero_vector(f, 4);
    fr.image_ok = fr.image_ok && q.kernel4.contains(sys.values(fr.embed.apply(y)));
  }

  for_each_projective_point(f, 4, [&](const Vec& y) {
    for (const FqMatrix& g : fr.restricted_grams)
      if (quad_value(f, g, y) != 0) return;
    fr.z6.push_back(y);
  });
  const ZeroDimDegree base = zero_dim_degree(fr.restricted, rng);
  fr.z6_closure = base.plateau ? base.degree : 0;
  require(fr.z6_closure == 6 && fr.z6.size() <= 6, ErrorCode::non_generic_point,
          "curve span meets X in " + std::to_string(fr.z6_closure) + " points");

  // Quadrics of the restricted system through a random point cut Z₆ plus the fiber.
  for (int tries = 0; tries < 20 && fr.fiber_degree == 0; ++tries) {
    const Vec y = rng.nonzero_vector(f, 4);
    const Vec z = fr.map(y);
    if (is_zero(z)) continue;
    const Subspace through = kernel(FqMatrix::from_rows(f, {z}, 4));
    std::vector<MPoly> gens;
    for (std::size_t b = 0; b < through.dim(); ++b) {
      MPoly g(f, 4, 2);
      for (std::size_t j = 0; j < 4; ++j) g = g + fr.restricted[j].scaled(through.basis()(b, j));
      gens.push_back(g);
    }
    const ZeroDimDegree d = zero_dim_degree(gens, rng);
    fr.fiber_degree = d.plateau ? d.degree : 0;
  }
  return fr;
}

WeddleReport weddle(const SixSecantFrame& frame, Rng& rng) {
  const Field& f = frame.embed.field();
  WeddleReport r;
  std::array<std::array<MPoly, 4>, 4> jac{{
      {MPoly(f, 4, 1), MPoly(f, 4, 1), MPoly(f, 4, 1), MPoly(f, 4, 1)},
      {MPoly(f, 4, 1), MPoly(f, 4, 1), MPoly(f, 4, 1), MPoly(f, 4, 1)},
      {MPoly(f, 4, 1), MPoly(f, 4, 1), MPoly(f, 4, 1), MPoly(f, 4, 1)},
      {MPoly(f, 4, 1), MPoly(f, 4, 1), MPoly(f, 4, 1), MPoly(f, 4, 1)},
  }};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) jac[j][k] = frame.restricted[j].derivative(k);
  r.quartic = det4(f, jac);
  require(!r.quartic.is_zero(), ErrorCode::non_generic_point, "Jacobian determinant vanishes identically");
  r.nodes_ok = true;
  for (const Vec& z : frame.z6) {
    ++r.rational_nodes_checked;
    r.nodes_ok = r.nodes_ok && r.quartic.evaluate(z) == 0 && is_zero(r.quartic.gradient_at(z));
  }
  // Over the closure: adjoining W and its partials leaves the base scheme of degree 6.
  std::vector<MPoly> gens = frame.restricted;
  gens.push_back(r.quartic);
  for (std::size_t k = 0; k < 4; ++k) gens.push_back(r.quartic.derivative(k));
  const ZeroDimDegree d = zero_dim_degree(gens, rng);
  r.closure_degree = d.plateau ? d.degree : 0;
  r.nodes_ok = r.nodes_ok && r.closure_degree == frame.z6_closure;
  return r;
}

KummerReport kummer_quartic(const SixSecantFrame& frame, const WeddleReport& w, Rng& rng, bool nodes) {
  const Field& f = frame.embed.field();
  const MonomialBasis& b4 = monomial_basis(4, 4);
  KummerReport r;
  const std::size_t unknowns = b4.size() + 1;
  FqMatrix sys(f, 0, unknowns);
  while (sys.rows() < 80) {
    const Vec y = rng.nonzero_vector(f, 4);
    const Vec z = frame.map(y);
    if (is_zero(z)) continue;
    Vec row = monomial_values(f, b4, z);
    const Elem wy = w.quartic.evaluate(y);
    row.push_back(f.neg(f.mul(wy, wy)));
    sys.append_row(row);
  }
  r.fit_points = sys.rows();
  const Subspace sol = kernel(sys);
  r.solution_dim = sol.dim();
  require(r.solution_dim == 1, ErrorCode::inconsistent,
          "branch quartic solution space has dimension " + std::to_string(r.solution_dim));
  const Vec s = sol.vector(0);
  r.lambda = s.back();
  const Vec kd(s.begin(), s.end() - 1);
  r.quartic = MPoly::from_dense(f, 4, 4, kd);

  r.identity_ok = r.lambda != 0 && !r.quartic.is_zero();
  for (; r.verified_points < 40; ++r.verified_points) {
    const Vec y = rng.nonzero_vector(f, 4);
    const Elem wy = w.quartic.evaluate(y);
    r.identity_ok = r.identity_ok && r.quartic.evaluate(frame.map(y)) == f.mul(r.lambda, f.mul(wy, wy));
  }

  const Vec zq = frame.target_coords(frame.q.coords);
  r.node_at_q = r.quartic.evaluate(zq) == 0 && is_zero(r.quartic.gradient_at(zq));
  if (!nodes) return r;

  std::vector<Vec> partials;
  std::vector<MPoly> partial_polys;
  for (std::size_t k = 0; k < 4; ++k) {
    partial_polys.push_back(r.quartic.derivative(k));
    partials.push_back(partial_polys.back().dense());
  }
  for_each_projective_point(f, 4, [&](const Vec& z) {
    if (form_value(f, kd, 4, z) != 0) return;
    for (const Vec& d : partials)
      if (form_value(f, d, 3, z) != 0) return;
    r.rational_singular.push_back(z);
  });
  r.singular_closure = zero_dim_degree(partial_polys, rng, 12);

  auto is_rational_singular = [&](const Vec& z) {
    const Vec n = normalize_projective(f, z);
    for (const Vec& s2 : r.rational_singular)
      if (s2 == n) return true;
    return false;
  };
  r.bisecants_singular = true;
  for (std::size_t a = 0; a < frame.z6.size(); ++a)
    for (std::size_t c = a + 1; c < frame.z6.size(); ++c) {
      const Vec z = frame.map(axpy(f, 1, frame.z6[a], frame.z6[c]));
      ++r.bisecant_images;
      r.bisecants_singular = r.bisecants_singular && !is_zero(z) && is_rational_singular(z);
    }
  r.ok = r.identity_ok && r.node_at_q && r.bisecants_singular && r.rational_singular.size() <= 16 &&
         r.singular_closure.plateau && r.singular_closure.degree <= 16 && is_rational_singular(zq);
  return r;
}

CubicSurfaceReport cubic_surface(const SixSecantFrame& frame, const Trivector& t2, Rng& rng) {
  const Field& f = frame.embed.field();
  CubicSurfaceReport r;
  const Vec zq = normalize_projective(f, frame.target_coords(frame.q.coords));
  std::vector<Vec> pts;
  for (const PeskinePoint& p : peskine_points_on_slice(t2, frame.target)) {
    const Vec z = normalize_projective(f, frame.target_coords(p.coords));
    if (z != zq) pts.push_back(z);
  }
  r.points = pts.size();
  const Subspace forms = vanishing_forms(f, 4, 3, pts);
  r.solution_dim = forms.dim();
  if (r.solution_dim != 1) return r;
  r.cubic = MPoly::from_dense(f, 4, 3, forms.vector(0));
  r.q_off_cubic = r.cubic.evaluate(zq) != 0;
  r.smooth_ok = true;
  for (std::size_t i = 0; i < 20 && i < pts.size(); ++i) {
    const Vec& z = pts[rng.below(pts.size())];
    ++r.smooth_checked;
    r.smooth_ok = r.smooth_ok && !is_zero(r.cubic.gradient_at(z));
  }
  r.ok = r.q_off_cubic && r.smooth_ok && r.smooth_checked > 0;
  return r;
}

TangentDecomposition tangent_decomposition(const QuadricSystem& sys, const SyzygySpace& syz, const Trivector& t2,
                                           Rng& rng, std::size_t budget) {
  const Field& f = sys.field();
  TangentDecomposition out;
  out.reason = "no ramification image with four rational secant points within budget";
  while (out.attempts < budget) {
    ++out.attempts;
    const Vec a = rng.nonzero_vector(f, sys.nvars());
    const Vec b = rng.nonzero_vector(f, sys.nvars());
    Vec y;
    for (Elem s = 0; s < f.p() && y.empty(); ++s) {
      const Vec c = axpy(f, s, b, a);
      if (!is_zero(c) && det(sys.jacobian(c)) == 0 && !sys.vanishes_at(c)) y = c;
    }
    if (y.empty()) continue;
    const Vec r = f_x(sys, y);
    Subspace line;
    try {
      line = congruence_line_through(t2, r);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::point_on_peskine) throw;
      continue;
    }
    const Secancy sec = line_secancy(t2, line);
    if (sec.rational_points.size() != 4) continue;
    std::vector<PeskinePoint> pts;
    for (const Vec& v : sec.rational_points) {
      const PeskineTest pt = peskine_test(t2, v);
      require(pt.kernel.has_value(), ErrorCode::internal, "secancy root is not a Peskine point");
      pts.push_back({v, *pt.kernel});
    }
    std::vector<bool> on_kummer;
    bool singular = false;
    try {
      for (const PeskinePoint& p : pts) {
        const SixSecantFrame fr = six_secant_frame(sys, syz, p, rng);
        const KummerReport k = kummer_quartic(fr, weddle(fr, rng), rng, false);
        const Vec zr = fr.target_coords(r);
        on_kummer.push_back(k.quartic.evaluate(zr) == 0);
        singular = singular || is_zero(k.quartic.gradient_at(zr));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_generic_point && e.code() != ErrorCode::not_on_peskine) throw;
      continue;
    }
    // Tangent spaces are only defined at smooth points of the four quartics.
    if (singular) {
      ++out.singular_rejected;
      continue;
    }
    out.skipped = false;
    out.reason.clear();
    out.r = r;
    out.line = line;
    out.secant_points = pts;
    out.on_kummer = on_kummer;
    out.line_in_all = true;
    std::vector<Subspace> spaces;
    for (const PeskinePoint& p : pts) {
      out.line_in_all = out.line_in_all && p.kernel4.contains(line);
      spaces.push_back(p.kernel4);
    }
    out.sum_dim = span_union(spaces).dim() - line.dim();
    out.ok = out.line_in_all && out.sum_dim == 8 &&
             std::all_of(on_kummer.begin(), on_kummer.end(), [](bool v) { return v; });
    return out;
  }
  return out;
}

}  // namespace k3g16
