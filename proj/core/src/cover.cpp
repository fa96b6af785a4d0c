#include "k3g16/cover.hpp"

#include "k3g16/errors.hpp"

namespace k3g16 {

Vec f_x(const QuadricSystem& sys, std::span<const Elem> p) {
  const Vec v = sys.values(p);
  require(!is_zero(v), ErrorCode::on_base_locus, "point lies on X");
  return normalize_projective(sys.field(), v);
}

InvariantLine invariant_line(const QuadricSystem& sys, const SyzygySpace& syz, std::span<const Elem> p) {
  const Field& f = sys.field();
  const Vec fv = sys.values(p);
  require(!is_zero(fv), ErrorCode::on_base_locus, "point lies on X");
  // Linear forms w ↦ Σ_i Q_i(p) σ^a_i(w), one per syzygy.
  FqMatrix forms(f, syz.dim(), 10);
  for (std::size_t a = 0; a < syz.dim(); ++a)
    for (std::size_t k = 0; k < 10; ++k) {
      Elem acc = 0;
      for (std::size_t i = 0; i < 10; ++i) acc = f.add(acc, f.mul(fv[i], syz.sigma(a, i, k)));
      forms(a, k) = acc;
    }
  InvariantLine out;
  out.span = kernel(forms);
  require(out.span.dim() == 2, ErrorCode::non_generic_point,
          "invariant line locus has dimension " + std::to_string(out.span.dim()));
  require(out.span.contains(p), ErrorCode::internal, "invariant line misses its point");
  out.p = normalize_projective(f, p);
  for (std::size_t i = 0; i < 2; ++i)
    if (!proportional(f, out.span.vector(i), out.p)) {
      out.r = out.span.vector(i);
      break;
    }
  out.v9 = kernel(FqMatrix::from_rows(f, {fv}, 10));
  return out;
}

Vec involute(const QuadricSystem& sys, const InvariantLine& line) {
  const Field& f = sys.field();
  Vec root;
  std::size_t active = 0;
  for (std::size_t i = 0; i < line.v9.dim(); ++i) {
    const FqMatrix g = sys.gram_combination(line.v9.vector(i));
    const Vec gr = g.apply(line.r);
    const Elem b = f.add(dot(f, line.p, gr), dot(f, line.p, gr));
    const Elem c = dot(f, line.r, gr);
    if (b == 0 && c == 0) continue;
    ++active;
    const Vec cand = normalize_projective(f, axpy(f, f.neg(c), line.p, scale(f, b, line.r)));
    if (root.empty())
      root = cand;
    else
      require(root == cand, ErrorCode::non_generic_point, "second roots on the invariant line disagree");
  }
  require(active > 0, ErrorCode::line_in_x, "invariant line lies on X");
  require(active >= 2, ErrorCode::non_generic_point, "too few quadrics restrict nontrivially to the line");
  return root;
}

Vec involute(const QuadricSystem& sys, const SyzygySpace& syz, std::span<const Elem> p) {
  return involute(sys, invariant_line(sys, syz, p));
}

Elem ramification_value(const QuadricSystem& sys, std::span<const Elem> p) { return det(sys.jacobian(p)); }

FqMatrix s_prime_at(const SyzygySpace& syz, std::span<const Elem> q) {
  const Field& f = syz.field();
  FqMatrix s(f, 10, syz.dim());
  for (std::size_t a = 0; a < syz.dim(); ++a)
    for (std::size_t k = 0; k < 10; ++k) {
      Elem acc = 0;
      for (std::size_t i = 0; i < 10; ++i) acc = f.add(acc, f.mul(syz.sigma(a, i, k), q[i]));
      s(k, a) = acc;
    }
  return s;
}

BisecantCheck bisecant_check(const QuadricSystem& sys, const SyzygySpace& syz, const InvariantLine& line,
                             std::span<const Elem> q) {
  const Field& f = sys.field();
  BisecantCheck r;
  const Subspace ker = kernel(s_prime_at(syz, q).transpose());
  r.kernel_dim = ker.dim();
  r.line_in_kernel = ker.contains(line.span);
  // Points t·p + s·r of the line with f_x proportional to q.
  std::size_t lead = 0;
  while (q[lead] == 0) ++lead;
  std::vector<Vec> forms;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    const FqMatrix& g = sys.gram(i);
    const Vec gr = g.apply(line.r);
    const Vec coeffs = {dot(f, line.p, g.apply(line.p)), f.add(dot(f, line.p, gr), dot(f, line.p, gr)),
                        dot(f, line.r, gr)};
    forms.push_back(coeffs);
  }
  std::vector<Vec> minors;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    if (i == lead) continue;
    minors.push_back(axpy(f, f.neg(q[i]), forms[lead], scale(f, q[lead], forms[i])));
  }
  const Vec g = binary_form_gcd(f, minors);
  r.fiber_degree = g.empty() ? 0 : g.size() - 1;
  r.ok = r.kernel_dim == 4 && r.line_in_kernel && r.fiber_degree == 2;
  return r;
}

CongruenceCheck invariant_line_congruence_check(const QuadricSystem& sys, const SyzygySpace& syz,
                                                const Trivector& t2, std::span<const Elem> p) {
  const Field& f = sys.field();
  CongruenceCheck r;
  const InvariantLine line = invariant_line(sys, syz, p);
  const Vec a = f_x(sys, line.p);
  // Third point of the line, avoiding the involution partner of p.
  Vec b;
  for (Elem c = 1; c < f.p(); ++c) {
    const Vec x = axpy(f, c, line.r, line.p);
    if (sys.vanishes_at(x)) continue;
    b = f_x(sys, x);
    if (!proportional(f, a, b)) break;
  }
  r.image_in_congruence = is_zero(t2.contract(a).apply(b));
  const Subspace v2 = Subspace::spanned_by(f, 10, {a, b});
  try {
    r.equals_congruence_line = congruence_line_through(t2, a) == v2;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::point_on_peskine) throw;
  }
  r.secancy = line_secancy(t2, v2);
  for (const Vec& q : r.secancy.rational_points) {
    ++r.bisecant_checked;
    if (bisecant_check(sys, syz, line, q).ok) ++r.bisecant_ok;
  }
  r.ok = r.image_in_congruence && r.equals_congruence_line && r.secancy.degree == 4 &&
         r.bisecant_ok == r.bisecant_checked;
  return r;
}

}  // namespace k3g16
