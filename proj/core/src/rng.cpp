#include "k3g16/rng.hpp"

namespace k3g16 {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng::Rng(std::uint64_t seed, std::string_view label) : eng_(splitmix64(seed ^ splitmix64(hash_label(label)))) {}

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t limit = ~0ULL - (~0ULL % n);
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

Vec Rng::vector(const Field& f, std::size_t n) {
  Vec v(n);
  for (auto& e : v) e = uniform(f);
  return v;
}

Vec Rng::nonzero_vector(const Field& f, std::size_t n) {
  for (;;) {
    Vec v = vector(f, n);
    if (!is_zero(v)) return v;
  }
}

FqMatrix Rng::matrix(const Field& f, std::size_t rows, std::size_t cols) {
  FqMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(f);
  return m;
}

Rng Rng::fork(std::string_view label) { return Rng(eng_(), label); }

}  // namespace k3g16
