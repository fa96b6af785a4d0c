#include "k3g16/xquad.hpp"

#include <algorithm>

#include "k3g16/errors.hpp"
#include "k3g16/multilinear.hpp"
#include "k3g16/rng.hpp"

namespace k3g16 {

QuadricSystem::QuadricSystem(const Subspace& space) : space_(space) {
  require(space.ambient_dim() == monomial_count(10, 2), ErrorCode::invalid_argument, "quadric space ambient");
  for (std::size_t i = 0; i < space_.dim(); ++i) grams_.push_back(quadric(i).gram());
}

MPoly QuadricSystem::quadric(std::size_t i) const {
  return MPoly::from_dense(field(), nvars_, 2, space_.basis().row(i));
}

std::vector<MPoly> QuadricSystem::quadrics() const {
  std::vector<MPoly> out;
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(quadric(i));
  return out;
}

MPoly QuadricSystem::combination(std::span<const Elem> u) const {
  return MPoly::from_dense(field(), nvars_, 2, space_.basis().apply_left(u));
}

FqMatrix QuadricSystem::gram_combination(std::span<const Elem> u) const {
  const Field& f = field();
  FqMatrix g(f, nvars_, nvars_);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (u[i] == 0) continue;
    g = g + grams_[i].scaled(u[i]);
  }
  return g;
}

Vec QuadricSystem::values(std::span<const Elem> pt) const {
  const Vec mono = monomial_values(field(), monomial_basis(nvars_, 2), pt);
  return space_.basis().apply(mono);
}

bool QuadricSystem::vanishes_at(std::span<const Elem> pt) const { return is_zero(values(pt)); }

FqMatrix QuadricSystem::jacobian(std::span<const Elem> pt) const {
  const Field& f = field();
  FqMatrix j(f, dim(), nvars_);
  for (std::size_t i = 0; i < dim(); ++i) {
    const Vec gp = grams_[i].apply(pt);
    for (std::size_t k = 0; k < nvars_; ++k) j(i, k) = f.add(gp[k], gp[k]);
  }
  return j;
}

std::vector<FqMatrix> QuadricSystem::restricted_grams(const FqMatrix& rows) const {
  std::vector<FqMatrix> out;
  const FqMatrix rt = rows.transpose();
  for (const FqMatrix& g : grams_) out.push_back(rows * g * rt);
  return out;
}

Subspace Ruling::span(const Field& f) const {
  return Subspace::spanned_by(f, point.size(), {point, direction});
}

namespace {

// Coefficient vectors (6 entries) of the conics T G Tᵀ, as a row space.
Subspace conic_span(const std::vector<FqMatrix>& restricted) {
  const Field& f = restricted.front().field();
  const std::size_t n = restricted.front().rows();
  std::vector<Vec> rows;
  for (const FqMatrix& g : restricted) rows.push_back(MPoly::from_gram(g).dense());
  return Subspace::spanned_by(f, monomial_count(n, 2), rows);
}

// Projective points y with every form of the span vanishing at y.
std::vector<Vec> projective_zeros(const Subspace& forms, std::size_t nvars, std::size_t limit) {
  const Field& f = forms.field();
  const MonomialBasis& mb = monomial_basis(nvars, 2);
  std::vector<Vec> out;
  for_each_projective_point(f, nvars, [&](const Vec& y) {
    if (out.size() > limit) return;
    const Vec mono = monomial_values(f, mb, y);
    if (is_zero(forms.basis().apply(mono))) out.push_back(y);
  });
  return out;
}

Vec point_in_span(const Field& f, const Vec& y, const FqMatrix& rows) {
  return normalize_projective(f, rows.apply_left(y));
}

}  // namespace

PlaneQuadrics plane_quadrics(const MukaiModel& model, const FqMatrix& plane, Rng& rng, std::size_t min_points) {
  const Field& f = model.field();
  require(plane.rows() == 3 && plane.cols() == 4, ErrorCode::invalid_argument, "plane must be 3 x 4");
  require(rank(plane) == 3, ErrorCode::non_generic_plane, "plane basis is degenerate");
  const MonomialBasis& mb = monomial_basis(10, 2);
  FqMatrix rows(f, 0, mb.size());
  std::size_t misses = 0;
  auto add_points = [&](std::size_t count) {
    std::size_t added = 0;
    while (added < count) {
      const Vec y = rng.nonzero_vector(f, 3);
      const Vec x = plane.apply_left(y);
      Subspace t;
      try {
        t = model.t_fiber(x);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::non_generic_point) throw;
        require(++misses < 4 * count + 16, ErrorCode::non_generic_plane, "plane meets the degeneracy locus");
        continue;
      }
      const Vec c = t.basis().apply_left(rng.nonzero_vector(f, t.dim()));
      if (is_zero(c)) continue;
      rows.append_row(monomial_values(f, mb, c));
      ++added;
    }
  };
  add_points(min_points);
  Subspace sol = kernel(rows);
  // Two further rounds must leave the solution space unchanged.
  for (int round = 0; round < 2; ++round) {
    add_points(20);
    Subspace next = kernel(rows);
    if (next.dim() != sol.dim()) {
      sol = next;
      round = -1;
      require(rows.rows() < 10 * min_points, ErrorCode::non_generic_plane, "plane quadrics never stabilize");
      continue;
    }
  }
  require(sol.dim() == 4, ErrorCode::non_generic_plane,
          "plane quadric space has dimension " + std::to_string(sol.dim()));
  return {plane, sol, rows.rows()};
}

V10Assembly assemble_v10(const MukaiModel& model, Rng& rng, std::size_t n_planes, std::size_t budget,
                         std::size_t extra_planes) {
  const Field& f = model.field();
  V10Assembly out;
  Subspace total = Subspace::zero(f, monomial_count(10, 2));
  std::size_t attempts = 0;
  auto next_plane = [&]() -> bool {
    while (attempts < budget + extra_planes + 8) {
      ++attempts;
      FqMatrix plane = rng.matrix(f, 3, 4);
      try {
        out.planes.push_back(plane_quadrics(model, plane, rng));
        return true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::non_generic_plane) throw;
        ++out.rejected_planes;
      }
    }
    return false;
  };
  while (out.planes.size() < budget && (out.planes.size() < n_planes || total.dim() < 10)) {
    if (!next_plane()) break;
    total = span_union(total, out.planes.back().quadrics);
    out.growth.push_back(total.dim());
    if (total.dim() == 10 && out.planes_needed == 0) out.planes_needed = out.planes.size();
    require(total.dim() <= 10, ErrorCode::internal, "quadric span exceeds 10");
  }
  require(total.dim() == 10, ErrorCode::seed_not_generic,
          "quadric span reached only " + std::to_string(total.dim()));
  for (std::size_t i = 0; i < extra_planes; ++i) {
    if (!next_plane()) break;
    total = span_union(total, out.planes.back().quadrics);
    out.growth.push_back(total.dim());
    ++out.extra_planes;
    require(total.dim() == 10, ErrorCode::internal, "quadric span grows beyond 10");
  }
  out.system = QuadricSystem(total);
  return out;
}

std::vector<XPoint> x_points_in_plane(const MukaiModel& model, const QuadricSystem& sys, std::span<const Elem> x) {
  const Field& f = model.field();
  const Subspace t = model.t_fiber(x);
  const Subspace conics = conic_span(sys.restricted_grams(t.basis()));
  const std::vector<Vec> zeros = projective_zeros(conics, 3, 4);
  require(zeros.size() <= 4, ErrorCode::seed_not_generic, "more than 4 X points in a fiber plane");
  std::vector<XPoint> out;
  for (const Vec& y : zeros) out.push_back({point_in_span(f, y, t.basis()), Vec(x.begin(), x.end())});
  return out;
}

std::size_t x_points_closure_count(const MukaiModel& model, const QuadricSystem& sys, std::span<const Elem> x,
                                   Rng& rng) {
  const Field& f = model.field();
  const Subspace t = model.t_fiber(x);
  const Subspace conics = conic_span(sys.restricted_grams(t.basis()));
  std::vector<MPoly> gens;
  for (std::size_t i = 0; i < conics.dim(); ++i) gens.push_back(MPoly::from_dense(f, 3, 2, conics.basis().row(i)));
  const ZeroDimDegree z = zero_dim_degree(gens, rng);
  require(z.plateau, ErrorCode::inconsistent, "fiber plane intersection is not zero-dimensional");
  return z.degree;
}

XSample sample_x_points(const MukaiModel& model, const QuadricSystem& sys, std::size_t count, Rng& rng,
                        std::size_t budget) {
  const Field& f = model.field();
  XSample out;
  while (out.points.size() < count && out.planes_tried < budget) {
    ++out.planes_tried;
    const Vec x = rng.nonzero_vector(f, 4);
    std::vector<XPoint> pts;
    try {
      pts = x_points_in_plane(model, sys, x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_generic_point) throw;
      continue;
    }
    for (XPoint& p : pts) {
      if (out.points.size() == count) break;
      out.points.push_back(std::move(p));
    }
  }
  require(out.points.size() == count, ErrorCode::seed_not_generic, "X point budget exhausted");
  return out;
}

Ruling ruling_through(const QuadricSystem& sys, const XPoint& p) {
  const Field& f = sys.field();
  const FqMatrix jac = sys.jacobian(p.coords);
  require(rank(jac) == 6, ErrorCode::non_generic_point, "X point is not smooth");
  const Subspace tangent = kernel(jac);
  require(tangent.dim() == 4, ErrorCode::internal, "tangent space dimension");
  // Three tangent directions independent modulo the point itself.
  FqMatrix dirs(f, 0, 10);
  Subspace seen = Subspace::spanned_by(f, 10, {p.coords});
  for (std::size_t i = 0; i < tangent.dim() && dirs.rows() < 3; ++i) {
    const Vec v = tangent.vector(i);
    if (seen.contains(v)) continue;
    dirs.append_row(v);
    seen = span_union(seen, Subspace::spanned_by(f, 10, {v}));
  }
  require(dirs.rows() == 3, ErrorCode::internal, "tangent space does not contain the point");
  const Subspace conics = conic_span(sys.restricted_grams(dirs));
  const std::vector<Vec> zeros = projective_zeros(conics, 3, 1);
  require(zeros.size() == 1, ErrorCode::non_generic_point,
          zeros.empty() ? "no ruling through point" : "several rulings through point");
  return {p.coords, point_in_span(f, zeros.front(), dirs)};
}

std::size_t hilbert_combination(unsigned m) {
  const auto c = [](unsigned n, unsigned k) { return static_cast<long long>(binomial(n, k)); };
  return static_cast<std::size_t>(21 * c(m + 3, 3) - 36 * c(m + 2, 2) + 17 * c(m + 1, 1));
}

HilbertReport hilbert_check(const QuadricSystem& sys, unsigned m_max, Rng& rng) {
  HilbertReport r;
  const std::vector<MPoly> gens = sys.quadrics();
  for (unsigned m = 2; m <= m_max; ++m) {
    const IdealDim id = homogeneous_ideal_dim(gens, m, rng);
    r.degrees.push_back(m);
    r.ideal_dims.push_back(id.dim);
    r.values.push_back(monomial_count(10, m) - id.dim);
    r.expected.push_back(hilbert_combination(m));
  }
  if (r.values.size() >= 4) {
    const auto v = [&](std::size_t i) { return static_cast<long long>(r.values[i]); };
    const std::size_t n = r.values.size();
    r.third_difference = v(n - 1) - 3 * v(n - 2) + 3 * v(n - 3) - v(n - 4);
  }
  r.ok = r.values == r.expected && r.third_difference == 21;
  return r;
}

Subspace pencil(const QuadricSystem& sys, const std::vector<PlaneQuadrics>& planes) {
  const Field& f = sys.field();
  require(!planes.empty(), ErrorCode::invalid_argument, "pencil needs plane quadric spaces");
  Subspace acc = Subspace::full(f, sys.dim());
  for (const PlaneQuadrics& pq : planes) {
    std::vector<Vec> coords;
    for (std::size_t i = 0; i < pq.quadrics.dim(); ++i) {
      auto c = sys.coordinates(pq.quadrics.basis().row(i));
      require(c.has_value(), ErrorCode::inconsistent, "plane quadric outside the quadric system");
      coords.push_back(*c);
    }
    acc = intersect(acc, Subspace::spanned_by(f, sys.dim(), coords));
  }
  return acc;
}

PluckerReport plucker_model(const Field& f, const std::vector<Ruling>& rulings, Rng& rng, unsigned m_max) {
  PluckerReport r;
  r.rulings = rulings.size();
  require(!rulings.empty(), ErrorCode::invalid_argument, "no rulings");
  const std::size_t n = rulings.front().point.size();
  std::vector<Vec> bivectors;
  for (const Ruling& l : rulings) bivectors.push_back(wedge2(f, l.point, l.direction));
  const Subspace span = Subspace::spanned_by(f, n * (n - 1) / 2, bivectors);
  r.span_dim = span.dim();
  r.annihilator_dim = span.annihilator().dim();
  const std::size_t k = span.dim();

  // Tautological skew matrix: entry (i, j) is a linear form in the span coordinates.
  std::vector<MPoly> entry;
  for (const auto& [i, j] : pair_list(n)) {
    Vec lin(k);
    for (std::size_t c = 0; c < k; ++c) lin[c] = span.basis()(c, pair_index(i, j, n));
    entry.push_back(MPoly::linear(f, lin));
  }
  const auto a = [&](std::size_t i, std::size_t j) -> const MPoly& { return entry[pair_index(i, j, n)]; };
  std::vector<Vec> pf_dense;
  for (std::size_t i0 = 0; i0 < n; ++i0)
    for (std::size_t i1 = i0 + 1; i1 < n; ++i1)
      for (std::size_t i2 = i1 + 1; i2 < n; ++i2)
        for (std::size_t i3 = i2 + 1; i3 < n; ++i3) {
          MPoly pf = a(i0, i1) * a(i2, i3) - a(i0, i2) * a(i1, i3) + a(i0, i3) * a(i1, i2);
          pf_dense.push_back(pf.dense());
        }
  const Subspace pf_space = Subspace::spanned_by(f, monomial_count(k, 2), pf_dense);
  r.pfaffian_span = pf_space.dim();
  std::vector<MPoly> gens;
  for (std::size_t i = 0; i < pf_space.dim(); ++i) gens.push_back(MPoly::from_dense(f, k, 2, pf_space.basis().row(i)));
  for (unsigned m = 1; m <= m_max; ++m) {
    const std::size_t ideal = m < 2 ? 0 : homogeneous_ideal_dim(gens, m, rng).dim;
    r.hilbert.push_back(monomial_count(k, m) - ideal);
  }
  r.ok = r.span_dim == 17 && r.annihilator_dim == 28;
  for (unsigned m = 1; m <= m_max; ++m) r.ok = r.ok && r.hilbert[m - 1] == 2 + 15 * m * m;
  return r;
}

}  // namespace k3g16
