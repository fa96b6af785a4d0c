#pragma once

#include <string>
#include <vector>

#include "k3g16/multilinear.hpp"
#include "k3g16/xquad.hpp"

namespace k3g16 {

class Rng;

struct T1Run {
  std::vector<XPoint> points;
  std::vector<Ruling> rulings;
  std::vector<Subspace> k;       // 10 spaces of V₁₀ coordinates, pair order (i < j)
  std::vector<Subspace> delta;   // 45 intersections, order of pairs of pairs
  Subspace v35;                  // in ∧²V₁₀ (45 coordinates)
  Subspace n10;                  // annihilator of V₃₅ in ∧²V₁₀^∨
  std::size_t solution_dim = 0;  // step (v)
  std::size_t flattening_rank = 0;
  bool flattening_onto_n10 = false;
  Trivector t1;                  // dual variance, normalized
  Elem scale = 1;
  std::size_t attempts = 1;
  std::vector<std::string> rejected;  // failing step of each discarded point set
};

// Quadrics of V₁₀ vanishing on the span of two rulings (dimension 6 for skew rulings).
Subspace k_space(const QuadricSystem& sys, const Ruling& a, const Ruling& b);

// Steps (ii)–(vi) for five given points; throws NonGenericPoint naming the failing step.
T1Run run_algorithm(const QuadricSystem& sys, const std::vector<XPoint>& points);
// Samples points until the algorithm succeeds, up to the attempt budget.
T1Run compute_t1(const MukaiModel& model, const QuadricSystem& sys, Rng& rng, std::size_t budget = 8);

struct T1Verification {
  std::size_t delta_lines = 0;
  std::size_t delta_in_congruence = 0;
  std::size_t k_spaces = 0;
  std::size_t k_nonzero_values = 0;
  std::size_t extra_k_spaces = 0;
  std::size_t extra_nonzero_values = 0;
  bool ok = false;
};
// extra: a sixth ruling; its K-spaces with the five input rulings are checked as well.
T1Verification verify_t1(const QuadricSystem& sys, const T1Run& run, const Ruling* extra = nullptr);

// Number of nonzero values of t on ∧³ of a subspace (coordinates of its basis).
std::size_t nonzero_on_wedge3(const Trivector& t, const Subspace& s);

}  // namespace k3g16
