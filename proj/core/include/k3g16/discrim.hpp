#pragma once

#include <vector>

#include "k3g16/cover.hpp"
#include "k3g16/syzygy.hpp"
#include "k3g16/trivector.hpp"

namespace k3g16 {

class Rng;

struct DiscValue {
  Elem value = 0;
  Vec gradient;  // (trace(adj(A)·G_i))_i
};
// det of Σ u_i G_i and its gradient in u (D_γ ⊂ P(V₁₀)).
DiscValue disc_value_and_grad(const QuadricSystem& sys, std::span<const Elem> u);

struct SliceReport {
  ZeroDimDegree hf;
  FqMatrix slice;                     // 4 × 10 basis of the P³
  bool interpolation_unique = false;
  std::size_t samples = 0;
  std::size_t generators = 0;
  bool identity_checked = false;      // interpolants re-evaluate correctly at fresh points
};

// Rank ≤ 8 locus of Σ u_i G_i on a random P³ of P(V₁₀): degree 165.
SliceReport fit1_slice_degree(const QuadricSystem& sys, Rng& rng, unsigned cap = 40);
// Singular points of D_γ on a random P³: degree 225. The partials are also compared
// with the derivatives of the interpolated restricted determinant.
SliceReport sing_slice_degree(const QuadricSystem& sys, Rng& rng, unsigned cap = 40);

struct X60Report {
  std::size_t gram_rank = 0;
  bool vertex_is_x = false;
  bool gradient_zero = false;
  bool determinant_zero = false;
  std::size_t tries = 0;
  bool ok = false;
};
X60Report x60_membership(const QuadricSystem& sys, const SyzygySpace& syz, const XPoint& x, Rng& rng);

struct Fit0Report {
  SliceReport slice;
  std::vector<std::size_t> peskine_ranks;  // rank s'_γ at Peskine points of t₂
  std::size_t generic_points = 0;
  std::size_t generic_rank8 = 0;
  bool rank7_found = false;
  Vec rank7_point;
  std::size_t rank7_slices_tried = 0;
  bool ok = false;
};
// Maximal minors of s'_γ on a random P³ of P(V₁₀^∨) (degree 120) plus the rank checks.
Fit0Report fit0_sprime_checks(const SyzygySpace& syz, const std::vector<PeskinePoint>& peskine, Rng& rng,
                              std::size_t generic_points = 100, unsigned cap = 40);

struct ProbeReport {
  std::vector<std::size_t> t1_peskine_gram_ranks;
  std::size_t chords = 0;
  std::vector<std::size_t> chord_endpoint_orders;  // vanishing order of the ramification form at an endpoint
  bool degree_arithmetic = false;  // 150 + 15 + 60 = 225
  bool skipped = false;
};
ProbeReport conjecture_probes(const QuadricSystem& sys, const std::vector<PeskinePoint>& t1_peskine,
                              const std::vector<XPoint>& points);

}  // namespace k3g16
