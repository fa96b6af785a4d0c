#include "k3g16/syzygy.hpp"

#include "k3g16/errors.hpp"

namespace k3g16 {

namespace {

// Dense coefficients (55) of the product of two linear forms in w0..w9.
Vec product_quadric(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  const MonomialBasis& mb = monomial_basis(10, 2);
  Vec out(mb.size(), 0);
  std::uint8_t e[10] = {};
  for (std::size_t k = 0; k < 10; ++k) {
    if (a[k] == 0) continue;
    for (std::size_t l = 0; l < 10; ++l) {
      if (b[l] == 0) continue;
      ++e[k];
      ++e[l];
      const std::size_t idx = mb.index(e);
      out[idx] = f.add(out[idx], f.mul(a[k], b[l]));
      --e[k];
      --e[l];
    }
  }
  return out;
}

// Linear forms σ^a_i(w) = Σ_k σ[a,i,k] w_k, indexed [a][i].
std::vector<std::vector<Vec>> syzygy_forms(const SyzygySpace& syz) {
  std::vector<std::vector<Vec>> out(syz.dim(), std::vector<Vec>(10, Vec(10)));
  for (std::size_t a = 0; a < syz.dim(); ++a)
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t k = 0; k < 10; ++k) out[a][i][k] = syz.sigma(a, i, k);
  return out;
}

}  // namespace

SyzygySpace::SyzygySpace(const Subspace& v8) : v8_(v8) {
  require(v8.ambient_dim() == 100, ErrorCode::invalid_argument, "syzygy space ambient");
}

FqMatrix SyzygySpace::s_at(std::span<const Elem> pt) const {
  const Field& f = field();
  FqMatrix s(f, 10, dim());
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t i = 0; i < 10; ++i) {
      Elem acc = 0;
      for (std::size_t k = 0; k < 10; ++k) acc = f.add(acc, f.mul(sigma(a, i, k), pt[k]));
      s(i, a) = acc;
    }
  return s;
}

SyzygySpace linear_syzygies(const QuadricSystem& sys) {
  const Field& f = sys.field();
  const MonomialBasis& q2 = monomial_basis(10, 2);
  const MonomialBasis& q3 = monomial_basis(10, 3);
  FqMatrix mul(f, q3.size(), 100);
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    const auto row = sys.space().basis().row(i);
    for (std::size_t m = 0; m < q2.size(); ++m) {
      if (row[m] == 0) continue;
      Exponents e = q2[m];
      for (std::size_t k = 0; k < 10; ++k) {
        ++e[k];
        mul(q3.index(e), i * 10 + k) = f.add(mul(q3.index(e), i * 10 + k), row[m]);
        --e[k];
      }
    }
  }
  const Subspace v8 = kernel(mul);
  require(v8.dim() == 8, ErrorCode::seed_not_generic,
          "linear syzygy space has dimension " + std::to_string(v8.dim()));
  return SyzygySpace(v8);
}

Subspace singular_at(const QuadricSystem& sys, std::span<const Elem> x) {
  return kernel(sys.jacobian(x).transpose());
}

Subspace vertex_fiber(const QuadricSystem& sys, const SyzygySpace& syz, std::span<const Elem> x) {
  const Subspace image = column_space(syz.s_at(x));
  require(image == singular_at(sys, x), ErrorCode::internal,
          "syzygy image differs from the quadrics singular at the point");
  return image;
}

SymplecticPhi phi_compute(const QuadricSystem& sys, const SyzygySpace& syz) {
  const Field& f = sys.field();
  const std::size_t n8 = syz.dim();
  const auto forms = syzygy_forms(syz);
  const std::vector<std::size_t> free = sys.space().free_columns();
  const std::size_t nq = free.size();
  // Column a*8+b: classes modulo V₁₀ of σ^a_i σ^b_j for all (i, j).
  FqMatrix eq(f, 100 * nq, n8 * n8);
  for (std::size_t a = 0; a < n8; ++a)
    for (std::size_t b = 0; b < n8; ++b)
      for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j) {
          const Vec r = sys.space().reduce(product_quadric(f, forms[a][i], forms[b][j]));
          for (std::size_t c = 0; c < nq; ++c) eq((i * 10 + j) * nq + c, a * n8 + b) = r[free[c]];
        }
  const Subspace ker = kernel(eq);
  SymplecticPhi out;
  out.kernel_dim = ker.dim();
  require(ker.dim() == 1, ErrorCode::seed_not_generic, "phi kernel has dimension " + std::to_string(ker.dim()));
  out.phi = FqMatrix(f, n8, n8);
  const Vec v = normalize_projective(f, ker.vector(0));
  for (std::size_t a = 0; a < n8; ++a)
    for (std::size_t b = 0; b < n8; ++b) out.phi(a, b) = v[a * n8 + b];
  out.rank = rank(out.phi);
  require(out.phi.is_skew(), ErrorCode::seed_not_generic, "phi is not skew");
  require(out.rank == n8, ErrorCode::seed_not_generic, "phi is singular");
  return out;
}

bool phi_isotropic_at(const SymplecticPhi& phi, const SyzygySpace& syz, std::span<const Elem> x) {
  const FqMatrix s = syz.s_at(x);
  // Image of ᵗs_γ(x) in V₈^∨ is isotropic for φ.
  if (!(s * phi.phi * s.transpose()).is_zero()) return false;
  // Equivalently ker s_γ(x) ⊂ V₈ is isotropic for φ⁻¹.
  const Subspace k = kernel(s);
  const auto inv = inverse(phi.phi);
  if (!inv) return false;
  const FqMatrix kb = k.basis();
  return k.dim() == 4 && (kb * *inv * kb.transpose()).is_zero();
}

T2Result t2_compute(const QuadricSystem& sys, const SyzygySpace& syz, const SymplecticPhi& phi) {
  const Field& f = sys.field();
  const std::size_t n8 = syz.dim();
  const auto forms = syzygy_forms(syz);
  Vec tensor(1000, 0);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) {
      Vec q(55, 0);
      for (std::size_t a = 0; a < n8; ++a)
        for (std::size_t b = 0; b < n8; ++b) {
          if (phi.phi(a, b) == 0) continue;
          q = axpy(f, phi.phi(a, b), product_quadric(f, forms[a][i], forms[b][j]), q);
        }
      const auto c = sys.coordinates(q);
      require(c.has_value(), ErrorCode::internal, "entry of s phi s^T is not in V10");
      for (std::size_t k = 0; k < 10; ++k) tensor[(i * 10 + j) * 10 + k] = (*c)[k];
    }
  const Trivector raw = Trivector::from_tensor(f, 10, tensor);
  T2Result out;
  out.t2 = raw.normalized(&out.scale);
  return out;
}

QuadraticSyzygyReport quadratic_syzygy_check(const QuadricSystem& sys, const SyzygySpace& syz,
                                             const Trivector& t2) {
  const Field& f = sys.field();
  const MonomialBasis& q2 = monomial_basis(10, 2);
  const std::size_t width = 10 * q2.size();
  // Linear syzygies multiplied by W₁₀.
  std::vector<Vec> lin;
  for (std::size_t a = 0; a < syz.dim(); ++a)
    for (std::size_t m = 0; m < 10; ++m) {
      Vec v(width, 0);
      for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t k = 0; k < 10; ++k) {
          const Elem s = syz.sigma(a, i, k);
          if (s == 0) continue;
          Exponents e(10, 0);
          ++e[k];
          ++e[m];
          const std::size_t idx = i * q2.size() + q2.index(e);
          v[idx] = f.add(v[idx], s);
        }
      lin.push_back(std::move(v));
    }
  const Subspace lsp = Subspace::spanned_by(f, width, lin);
  FqMatrix koszul(f, 0, width);
  for (const auto& [i, j] : pair_list(10)) {
    Vec v(width, 0);
    const auto qi = sys.space().basis().row(i);
    const auto qj = sys.space().basis().row(j);
    for (std::size_t m = 0; m < q2.size(); ++m) {
      v[i * q2.size() + m] = qj[m];
      v[j * q2.size() + m] = f.neg(qi[m]);
    }
    koszul.append_row(lsp.reduce(v));
  }
  QuadraticSyzygyReport r;
  const Subspace ker = kernel(koszul.transpose());
  r.kernel_dim = ker.dim();
  r.image_dim = rank(koszul);
  const FqMatrix flat = t2.flattening();
  r.flattening_rank = rank(flat);
  r.kernel_is_flattening = ker == row_space(flat);
  r.ok = r.kernel_dim == 10 && r.image_dim == 35 && r.kernel_is_flattening;
  return r;
}

SixPlaneReport dv_sixplane_check(const Trivector& t2, const Subspace& fiber) {
  SixPlaneReport r;
  const Subspace u6 = fiber.annihilator();
  r.orthogonal_dim = u6.dim();
  for (const auto& [a, b, c] : triple_list(u6.dim()))
    if (t2.evaluate(u6.basis().row(a), u6.basis().row(b), u6.basis().row(c)) != 0) ++r.nonzero_values;
  r.ok = r.orthogonal_dim == 6 && r.nonzero_values == 0;
  return r;
}

GlobalGenerationReport global_generation_check(const QuadricSystem& sys, const Ruling& r1, const Ruling& r2) {
  const Field& f = sys.field();
  GlobalGenerationReport r;
  const FqMatrix b = FqMatrix::from_rows(f, {r1.point, r1.direction, r2.point, r2.direction}, 10);
  r.span_dim = rank(b);
  if (r.span_dim != 4) return r;
  std::vector<Vec> images;
  for (const FqMatrix& g : sys.restricted_grams(b)) images.push_back(MPoly::from_gram(g).dense());
  const Subspace image = Subspace::spanned_by(f, 10, images);
  r.image_dim = image.dim();
  std::vector<Vec> line_points;
  for (std::size_t base : {0, 2}) {
    Vec u(4, 0), v(4, 0), w(4, 0);
    u[base] = 1;
    v[base + 1] = 1;
    w[base] = 1;
    w[base + 1] = 1;
    line_points.insert(line_points.end(), {u, v, w});
  }
  const Subspace through = vanishing_forms(f, 4, 2, line_points);
  r.through_lines_dim = through.dim();
  r.contained = through.contains(image);
  r.ok = r.image_dim == 4 && r.through_lines_dim == 4 && r.contained;
  return r;
}

}  // namespace k3g16
