#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3g16/syzygy.hpp"
#include "k3g16/trivector.hpp"

namespace k3g16 {

class Rng;

// The P³ spanned by the curve over a Peskine point q of t₂, with the quadrics restricted to it.
struct SixSecantFrame {
  PeskinePoint q;
  Subspace pq;                       // ker ᵗs'_γ(q) ⊂ W₁₀^∨, dim 4
  FqMatrix embed;                    // 10 × 4, local coordinates y ↦ embed·y
  std::vector<Vec> z6;               // rational points of X on P(P_q), local coordinates
  std::size_t z6_closure = 0;        // degree of the base scheme over the closure
  Subspace restriction_kernel;       // quadrics of V₁₀ vanishing on P(P_q), dim 6
  std::vector<std::size_t> chosen;   // indices i_j of V₁₀ basis quadrics spanning the restriction
  std::vector<MPoly> restricted;     // Q_{i_j} in local coordinates
  std::vector<FqMatrix> restricted_grams;
  FqMatrix target;                   // 4 × 10 basis of E_{t₂,q}, dual to the chosen quadrics
  bool annihilator_ok = false;       // ann(restriction kernel) = E_{t₂,q}
  bool image_ok = false;             // images of sample points lie in E_{t₂,q}
  std::size_t fiber_degree = 0;      // base scheme of the quadrics through a random point: 6 + 2

  // Image of a local point in target coordinates.
  Vec map(std::span<const Elem> y) const;
  // Coordinates of v ∈ E_{t₂,q} in the target frame.
  Vec target_coords(std::span<const Elem> v) const;
};

// Throws NotOnPeskine when rank s'_γ(q) ≠ 6 and NonGenericPoint when Z₆ is not six points.
SixSecantFrame six_secant_frame(const QuadricSystem& sys, const SyzygySpace& syz, const PeskinePoint& q, Rng& rng);

struct WeddleReport {
  MPoly quartic{Field(101), 4, 4};
  std::size_t rational_nodes_checked = 0;
  std::size_t closure_degree = 0;  // Z₆ with W and ∇W adjoined
  bool nodes_ok = false;
};
// Jacobian determinant of the restricted system.
WeddleReport weddle(const SixSecantFrame& frame, Rng& rng);

struct KummerReport {
  MPoly quartic{Field(101), 4, 4};   // in target coordinates
  Elem lambda = 0;                   // K∘f = λ·W²
  std::size_t solution_dim = 0;
  std::size_t fit_points = 0;
  std::size_t verified_points = 0;
  bool identity_ok = false;
  bool node_at_q = false;
  std::size_t bisecant_images = 0;   // from pairs of rational points of Z₆
  bool bisecants_singular = false;
  std::vector<Vec> rational_singular;  // normalized, target coordinates
  ZeroDimDegree singular_closure;      // zero scheme of the four partials
  bool ok = false;
};
// Without nodes only the quartic, the identity and the node at q are computed.
KummerReport kummer_quartic(const SixSecantFrame& frame, const WeddleReport& w, Rng& rng, bool nodes = true);

struct CubicSurfaceReport {
  std::size_t points = 0;  // rational rank ≤ 6 points other than q
  std::size_t solution_dim = 0;
  MPoly cubic{Field(101), 4, 3};
  bool q_off_cubic = false;
  std::size_t smooth_checked = 0;
  bool smooth_ok = false;
  bool ok = false;
};
CubicSurfaceReport cubic_surface(const SixSecantFrame& frame, const Trivector& t2, Rng& rng);

struct TangentDecomposition {
  bool skipped = true;
  std::string reason;
  std::size_t attempts = 0;
  Vec r;                                 // f_x of a ramification point
  Subspace line;                         // congruence line through r
  std::vector<PeskinePoint> secant_points;
  bool line_in_all = false;              // L_r ⊂ E_{t₂,pᵢ}
  std::size_t sum_dim = 0;               // dim Σ E_{t₂,pᵢ}/L_r
  std::vector<bool> on_kummer;           // K_{pᵢ}(r) = 0
  std::size_t singular_rejected = 0;     // candidates r singular on some K_{pᵢ}
  bool ok = false;
};
TangentDecomposition tangent_decomposition(const QuadricSystem& sys, const SyzygySpace& syz, const Trivector& t2,
                                           Rng& rng, std::size_t budget = 400);

}  // namespace k3g16
