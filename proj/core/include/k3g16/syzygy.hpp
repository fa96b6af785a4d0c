#pragma once

#include <vector>

#include "k3g16/multilinear.hpp"
#include "k3g16/xquad.hpp"

namespace k3g16 {

// V₈ ⊂ V₁₀ ⊗ W₁₀: relations Σ_{i,k} σ[i,k] Q_i w_k = 0. Coordinate i*10 + k.
class SyzygySpace {
 public:
  SyzygySpace() = default;
  explicit SyzygySpace(const Subspace& v8);

  const Field& field() const { return v8_.field(); }
  const Subspace& space() const { return v8_; }
  std::size_t dim() const { return v8_.dim(); }
  Elem sigma(std::size_t a, std::size_t i, std::size_t k) const { return v8_.basis()(a, i * 10 + k); }
  // s_γ at a point of P⁹: 10 × 8, column a is the V₁₀ vector Σ_k σ[a,·,k] pt_k.
  FqMatrix s_at(std::span<const Elem> pt) const;

 private:
  Subspace v8_;
};

SyzygySpace linear_syzygies(const QuadricSystem& sys);

// Image of s_γ at x, in V₁₀ coordinates; checked against the quadrics singular at x.
Subspace vertex_fiber(const QuadricSystem& sys, const SyzygySpace& syz, std::span<const Elem> x);
// Members of V₁₀ whose gradient vanishes at x.
Subspace singular_at(const QuadricSystem& sys, std::span<const Elem> x);

struct SymplecticPhi {
  FqMatrix phi;               // 8 × 8, normalized
  std::size_t kernel_dim = 0;
  std::size_t rank = 0;
};
SymplecticPhi phi_compute(const QuadricSystem& sys, const SyzygySpace& syz);
// φ restricted to ker s_γ(x) vanishes.
bool phi_isotropic_at(const SymplecticPhi& phi, const SyzygySpace& syz, std::span<const Elem> x);

struct T2Result {
  Trivector t2;           // normalized, in ∧³V₁₀
  Elem scale = 1;         // raw tensor = scale⁻¹ · t2
};
T2Result t2_compute(const QuadricSystem& sys, const SyzygySpace& syz, const SymplecticPhi& phi);

struct QuadraticSyzygyReport {
  std::size_t kernel_dim = 0;
  std::size_t image_dim = 0;
  std::size_t flattening_rank = 0;
  bool kernel_is_flattening = false;
  bool ok = false;
};
QuadraticSyzygyReport quadratic_syzygy_check(const QuadricSystem& sys, const SyzygySpace& syz, const Trivector& t2);

struct SixPlaneReport {
  std::size_t orthogonal_dim = 0;
  std::size_t nonzero_values = 0;
  bool ok = false;
};
SixPlaneReport dv_sixplane_check(const Trivector& t2, const Subspace& fiber);

struct GlobalGenerationReport {
  std::size_t span_dim = 0;
  std::size_t image_dim = 0;
  std::size_t through_lines_dim = 0;
  bool contained = false;
  bool ok = false;
};
GlobalGenerationReport global_generation_check(const QuadricSystem& sys, const Ruling& r1, const Ruling& r2);

}  // namespace k3g16
