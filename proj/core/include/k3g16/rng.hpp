#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "k3g16/matrix.hpp"

namespace k3g16 {

// Deterministic stream keyed by (seed, label). Residues are drawn from raw
// 64-bit engine output by rejection, so streams are identical on every
// platform and standard library.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view label);

  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n);
  Elem uniform(const Field& f) { return below(f.p()); }
  Elem nonzero(const Field& f) { return 1 + below(f.p() - 1); }
  Vec vector(const Field& f, std::size_t n);
  Vec nonzero_vector(const Field& f, std::size_t n);
  FqMatrix matrix(const Field& f, std::size_t rows, std::size_t cols);
  Rng fork(std::string_view label);

 private:
  std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash_label(std::string_view label);

}  // namespace k3g16
