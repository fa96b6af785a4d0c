#pragma once

#include <optional>
#include <vector>

#include "k3g16/mpoly.hpp"
#include "k3g16/multilinear.hpp"

namespace k3g16 {

class Rng;

// Pfaffian of a skew matrix by first-row expansion.
Elem pfaffian(const FqMatrix& a);
// The 45 Pfaffians of the 8 × 8 principal submatrices of a 10 × 10 skew matrix,
// ordered by the removed pair (lexicographic).
Vec sub_pfaffians(const FqMatrix& a);

struct PeskineTest {
  std::size_t rank = 0;
  std::optional<Subspace> kernel;  // set when rank ≤ 6
};
PeskineTest peskine_test(const Trivector& t, std::span<const Elem> v);

struct PeskinePoint {
  Vec coords;
  Subspace kernel4;
};

// V₂ = ker t(q, −, −); throws PointOnPeskine when the contraction has rank < 8.
Subspace congruence_line_through(const Trivector& t, std::span<const Elem> q);
bool is_congruence_line(const Trivector& t, const Subspace& v2);

struct Secancy {
  Vec quartic;              // binary form, quartic[e] = coefficient of s^e t^{deg-e}
  std::size_t degree = 0;
  std::size_t form_rank = 0;  // rank of the 45 restricted sub-Pfaffians
  BinaryRoots roots;
  // Point of the line for a root (s : t): t·a + s·b.
  std::vector<Vec> rational_points;
};
// Common factor of the sub-Pfaffians restricted to the line t·a + s·b.
// Throws DegenerateLine when they all vanish identically.
Secancy line_secancy(const Trivector& t, std::span<const Elem> a, std::span<const Elem> b);
Secancy line_secancy(const Trivector& t, const Subspace& v2);

enum class PeskineStrategy { slice, rejection, secant };

struct PeskineSample {
  std::vector<PeskinePoint> points;
  std::size_t trials = 0;  // points tested, or lines tried for the secant strategy
};
PeskineSample peskine_sample(const Trivector& t, PeskineStrategy strategy, std::size_t n, Rng& rng,
                             std::size_t budget = 0);
// All rational Peskine points on the P³ spanned by the rows of slice (4 × 10).
std::vector<PeskinePoint> peskine_points_on_slice(const Trivector& t, const FqMatrix& slice);

struct SliceDegree {
  ZeroDimDegree hf;
  FqMatrix slice;
  bool interpolation_unique = false;
};
// Degree of the Peskine locus via the sub-Pfaffian quartics restricted to a random P³.
SliceDegree peskine_slice_degree(const Trivector& t, Rng& rng, unsigned cap = 40);

// {a ∈ ∧³ dual : b∘a = 0}, coordinates in triple_list order.
Subspace perp_space(const Trivector& b);
// Infinitesimal orbit {t_h : h ∈ End} as a subspace of the 120 coefficients.
Subspace orbit_tangent(const Trivector& t);
std::size_t orbit_tangent_intersection(const Trivector& t, const Subspace& perp);

}  // namespace k3g16
