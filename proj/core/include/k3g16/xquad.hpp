#pragma once

#include <optional>
#include <vector>

#include "k3g16/mpoly.hpp"
#include "k3g16/mukai.hpp"

namespace k3g16 {

class Rng;

// V₁₀ ⊂ S²W₁₀ as an echelon basis over the 55 quadratic monomials of w0..w9.
class QuadricSystem {
 public:
  QuadricSystem() = default;
  explicit QuadricSystem(const Subspace& space);

  const Field& field() const { return space_.field(); }
  const Subspace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  std::size_t nvars() const { return nvars_; }
  const FqMatrix& gram(std::size_t i) const { return grams_[i]; }
  const std::vector<FqMatrix>& grams() const { return grams_; }
  MPoly quadric(std::size_t i) const;
  std::vector<MPoly> quadrics() const;
  // Quadric of V₁₀ with given coordinates in the basis.
  MPoly combination(std::span<const Elem> u) const;
  FqMatrix gram_combination(std::span<const Elem> u) const;

  // (Q_1(p), …, Q_n(p)).
  Vec values(std::span<const Elem> pt) const;
  bool vanishes_at(std::span<const Elem> pt) const;
  // Rows = gradients of the basis quadrics.
  FqMatrix jacobian(std::span<const Elem> pt) const;
  // Restrictions B G_i Bᵀ to the span of the rows of B.
  std::vector<FqMatrix> restricted_grams(const FqMatrix& rows) const;
  // Coordinates of a quadric (55 coefficients) in the basis; nullopt when outside.
  std::optional<Vec> coordinates(std::span<const Elem> quad) const { return space_.coordinates(quad); }

 private:
  Subspace space_;
  std::size_t nvars_ = 10;
  std::vector<FqMatrix> grams_;
};

struct XPoint {
  Vec coords;    // point of P⁹, first nonzero coordinate 1
  Vec source_x;  // the point of P³ whose plane produced it
};

struct Ruling {
  Vec point;      // the X point
  Vec direction;  // second spanning vector
  Subspace span(const Field& f) const;
};

struct PlaneQuadrics {
  FqMatrix plane;       // 3 × 4 basis of a 3-dim subspace of V^∨
  Subspace quadrics;    // ambient 55
  std::size_t samples = 0;
};

PlaneQuadrics plane_quadrics(const MukaiModel& model, const FqMatrix& plane, Rng& rng, std::size_t min_points = 80);

struct V10Assembly {
  QuadricSystem system;
  std::vector<PlaneQuadrics> planes;
  std::vector<std::size_t> growth;  // span dimension after each plane
  std::size_t planes_needed = 0;    // first plane count reaching 10
  std::size_t rejected_planes = 0;
  std::size_t extra_planes = 0;
};

V10Assembly assemble_v10(const MukaiModel& model, Rng& rng, std::size_t n_planes = 6, std::size_t budget = 12,
                         std::size_t extra_planes = 4);

// All points of the plane P(T_x^∨) on every quadric, over F_p.
std::vector<XPoint> x_points_in_plane(const MukaiModel& model, const QuadricSystem& sys, std::span<const Elem> x);
// Degree of the zero scheme of the quadrics restricted to P(T_x^∨) (4 over the closure).
std::size_t x_points_closure_count(const MukaiModel& model, const QuadricSystem& sys, std::span<const Elem> x,
                                   Rng& rng);

struct XSample {
  std::vector<XPoint> points;
  std::size_t planes_tried = 0;
};
XSample sample_x_points(const MukaiModel& model, const QuadricSystem& sys, std::size_t count, Rng& rng,
                        std::size_t budget = 500);

Ruling ruling_through(const QuadricSystem& sys, const XPoint& p);

struct HilbertReport {
  std::vector<unsigned> degrees;
  std::vector<std::size_t> values;     // C(m+9,9) − dim I_m
  std::vector<std::size_t> expected;   // 21 P₃ − 36 P₂ + 17 P₁
  std::vector<std::size_t> ideal_dims;
  long long third_difference = 0;
  bool ok = false;
};
HilbertReport hilbert_check(const QuadricSystem& sys, unsigned m_max, Rng& rng);
std::size_t hilbert_combination(unsigned m);

// Intersection of the per-plane quadric spaces, in V₁₀ coordinates (ambient 10).
Subspace pencil(const QuadricSystem& sys, const std::vector<PlaneQuadrics>& planes);

struct PluckerReport {
  std::size_t rulings = 0;
  std::size_t span_dim = 0;
  std::size_t annihilator_dim = 0;
  std::vector<std::size_t> hilbert;  // m = 1..4
  std::size_t pfaffian_span = 0;     // dimension of the span of the 4 × 4 Pfaffians
  bool ok = false;
};
PluckerReport plucker_model(const Field& f, const std::vector<Ruling>& rulings, Rng& rng, unsigned m_max = 4);

// Projective enumeration of P^{n-1}(F_p), calling fn on normalized points.
template <class Fn>
void for_each_projective_point(const Field& f, std::size_t n, Fn&& fn) {
  const std::uint64_t p = f.p();
  Vec v(n, 0);
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    const std::size_t free = n - lead - 1;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t r = idx;
      for (std::size_t i = 0; i < free; ++i) {
        v[n - 1 - i] = r % p;
        r /= p;
      }
      fn(static_cast<const Vec&>(v));
    }
  }
}

}  // namespace k3g16
