#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "k3g16/linalg.hpp"

namespace k3g16 {

struct Seed {
  Field field{101};
  std::uint64_t rng_seed = 0;
  Subspace M;  // in S₂V^∨, ambient 10 (quadratic monomials of x0..x3)
  Subspace N;  // in S_{2,1}V^∨, ambient 20 (coordinates of the fixed basis)
  std::vector<std::string> retries;  // failing check id of each rejected draw
};

struct SeedReport {
  bool ok = true;
  std::string failed_check;
  std::size_t kernel_dim = 0;  // dim (V^∨⊗M) ⊕ N
  std::size_t w10_dim = 0;
  std::vector<std::size_t> alpha_ranks;
};

class MukaiModel;

// α ∈ Hom(S₂V^∨/M, W₁₀⊗V): entry(j, w, i) for coset j, W₁₀ coordinate w, V coordinate i.
class AlphaTensor {
 public:
  AlphaTensor() = default;
  AlphaTensor(const Field& f, std::vector<Elem> data) : f_(f), data_(std::move(data)) {}
  Elem operator()(std::size_t j, std::size_t w, std::size_t i) const { return data_[(j * 10 + w) * 4 + i]; }
  const std::vector<Elem>& data() const { return data_; }
  // 10 × 8 evaluation at x ∈ V^∨.
  FqMatrix at(std::span<const Elem> x) const;

 private:
  Field f_{101};
  std::vector<Elem> data_;
};

class MukaiModel {
 public:
  explicit MukaiModel(const Seed& seed);

  const Field& field() const { return seed_.field; }
  const Seed& seed() const { return seed_; }
  // Kernel of q inside S_{2,1} (dimension 10 for a generic seed).
  const Subspace& quotient_kernel() const { return k21_; }
  // 10 × 20 matrix of q: S_{2,1}V^∨ → W₁₀.
  const FqMatrix& quotient_map() const { return q_; }
  std::size_t w10_dim() const { return q_.rows(); }
  // Coset representatives of S₂V^∨/M: monomial indices.
  const std::vector<std::size_t>& s2_cosets() const { return cosets_; }
  // W₁₀ coordinates of a tensor in S₂V^∨ ⊗ V^∨ (40 coordinates).
  Vec w10_of_tensor(std::span<const Elem> t) const;
  // S₂V^∨/M coordinates of a quadric (10 monomial coefficients).
  Vec quotient_s2(std::span<const Elem> quad) const;

  const AlphaTensor& alpha() const { return alpha_; }
  FqMatrix alpha_at(std::span<const Elem> x) const { return alpha_.at(x); }
  // T_x^∨ ⊂ W₁₀^∨; throws NonGenericPoint when rank α_x ≠ 7.
  Subspace t_fiber(std::span<const Elem> x) const;
  FqMatrix beta_at(std::span<const Elem> w) const;

 private:
  Seed seed_;
  Subspace k21_;
  FqMatrix q_;
  std::vector<std::size_t> cosets_;
  AlphaTensor alpha_;
};

// Quadric x² as a vector of S₂ monomial coefficients.
Vec square_of_linear(const Field& f, std::span<const Elem> x);

SeedReport validate_seed(const Seed& seed, std::uint64_t check_seed = 0);
Seed generate_seed(std::uint64_t p, std::uint64_t rng_seed, int max_retries = 8);
Seed make_seed(const Field& f, std::uint64_t rng_seed, const FqMatrix& m_rows, const FqMatrix& n_rows);

}  // namespace k3g16
