#pragma once

#include "k3g16/syzygy.hpp"
#include "k3g16/trivector.hpp"

namespace k3g16 {

// (Q_1(p), …, Q_10(p)) normalized; throws OnBaseLocus when p ∈ X.
Vec f_x(const QuadricSystem& sys, std::span<const Elem> p);

struct InvariantLine {
  Vec p;
  Vec r;            // second spanning vector
  Subspace span;    // dim 2
  Subspace v9;      // quadrics of V₁₀ (coordinates) vanishing at p
};
InvariantLine invariant_line(const QuadricSystem& sys, const SyzygySpace& syz, std::span<const Elem> p);

// Second point of the invariant line on the quadrics through X and p.
Vec involute(const QuadricSystem& sys, const InvariantLine& line);
Vec involute(const QuadricSystem& sys, const SyzygySpace& syz, std::span<const Elem> p);

// det of the 10 × 10 Jacobian of the quadrics at p.
Elem ramification_value(const QuadricSystem& sys, std::span<const Elem> p);

struct CongruenceCheck {
  bool image_in_congruence = false;   // t(V₂, V₂, −) = 0
  bool equals_congruence_line = false;  // V₂ = ker t(f_x(p), −, −)
  Secancy secancy;
  std::size_t bisecant_checked = 0;   // rational rank-drop points tested
  std::size_t bisecant_ok = 0;        // of those, passing bisecant_check
  bool ok = false;
};
CongruenceCheck invariant_line_congruence_check(const QuadricSystem& sys, const SyzygySpace& syz,
                                                const Trivector& t2, std::span<const Elem> p);

// s'_γ at q ∈ P(V₁₀^∨): 10 × 8 with entry (k, a) = Σ_i σ[a,i,k] q_i.
FqMatrix s_prime_at(const SyzygySpace& syz, std::span<const Elem> q);

struct BisecantCheck {
  std::size_t kernel_dim = 0;  // dim ker ᵗs'_γ(q)
  bool line_in_kernel = false;
  std::size_t fiber_degree = 0;  // points of the line over q, over the closure
  bool ok = false;
};
// For q on f_x(l): the curve over q spans P(ker ᵗs'_γ(q)) and meets the line twice.
BisecantCheck bisecant_check(const QuadricSystem& sys, const SyzygySpace& syz, const InvariantLine& line,
                             std::span<const Elem> q);

}  // namespace k3g16
