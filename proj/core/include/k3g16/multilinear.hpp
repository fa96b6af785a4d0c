#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "k3g16/linalg.hpp"

namespace k3g16 {

enum class Shape { S2, S3, wedge2, wedge3, S21 };

struct SchurBasis {
  std::size_t source_dim;
  Shape shape;
  std::size_t dim;
};
SchurBasis schur_basis(std::size_t n, Shape shape);

// Lexicographic wedge coordinates.
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);
std::size_t triple_index(std::size_t i, std::size_t j, std::size_t k, std::size_t n);
const std::vector<std::pair<std::size_t, std::size_t>>& pair_list(std::size_t n);
const std::vector<std::array<std::size_t, 3>>& triple_list(std::size_t n);
// Bivector coordinates of u ∧ v.
Vec wedge2(const Field& f, std::span<const Elem> u, std::span<const Elem> v);

// S₂V^∨ ⊗ V^∨ for dim V = 4: coordinate a*4 + k pairs quadratic monomial a
// with linear coordinate x_k.
namespace schur {
constexpr std::size_t kV = 4;
constexpr std::size_t kS2 = 10;
constexpr std::size_t kS3 = 20;
constexpr std::size_t kS2V = 40;
constexpr std::size_t kS21 = 20;

FqMatrix sym_matrix(const Field& f);   // 20 × 40
FqMatrix iota_matrix(const Field& f);  // 40 × 20, ι(g) = (1/3) Σ ∂_k g ⊗ x_k
FqMatrix s21_projector(const Field& f);  // 40 × 40, id − ι∘sym
// ker(sym) in echelon form: the fixed basis of S_{2,1}.
Subspace s21_space(const Field& f);
Vec tensor(const Field& f, std::span<const Elem> quad, std::span<const Elem> lin);
Vec s21_project(const Field& f, std::span<const Elem> t);
// Coordinates in the S_{2,1} basis of a vector lying in ker(sym).
Vec s21_coordinates(const Field& f, std::span<const Elem> t);
}  // namespace schur

enum class Variance { primal, dual };

// Alternating 3-tensor on an n-dimensional space, 120 slots for n = 10.
class Trivector {
 public:
  Trivector() : f_(101) {}
  Trivector(const Field& f, std::size_t dim = 10, Variance v = Variance::primal);
  static Trivector from_tensor(const Field& f, std::size_t dim, std::span<const Elem> c,
                               Variance v = Variance::primal);
  static Trivector from_coeffs(const Field& f, std::size_t dim, std::span<const Elem> coeffs,
                               Variance v = Variance::primal);

  const Field& field() const { return f_; }
  std::size_t dim() const { return n_; }
  Variance variance() const { return var_; }
  const Vec& coeffs() const { return c_; }
  Elem coeff(std::size_t i, std::size_t j, std::size_t k) const { return c_[triple_index(i, j, k, n_)]; }
  void set(std::size_t i, std::size_t j, std::size_t k, Elem v) { c_[triple_index(i, j, k, n_)] = v; }
  // Signed value for any index order.
  Elem at(std::size_t i, std::size_t j, std::size_t k) const;

  FqMatrix contract(std::span<const Elem> v) const;
  Elem evaluate(std::span<const Elem> u, std::span<const Elem> v, std::span<const Elem> w) const;
  // n × C(n,2): entry [k][(i,j)] = t(e_i, e_j, e_k).
  FqMatrix flattening() const;
  // t'(u,v,w) = t(g u, g v, g w).
  Trivector pulled_back(const FqMatrix& g) const;
  bool is_zero() const { return k3g16::is_zero(c_); }
  // Scaled so the first nonzero coefficient is 1; scalar returned via out param.
  Trivector normalized(Elem* scalar = nullptr) const;
  friend bool operator==(const Trivector& a, const Trivector& b) {
    return a.n_ == b.n_ && a.var_ == b.var_ && a.c_ == b.c_;
  }

 private:
  Field f_;
  std::size_t n_ = 0;
  Variance var_ = Variance::primal;
  Vec c_;
};

// b∘a for b ∈ ∧³V and a ∈ ∧³V^∨: C[k][m] = Σ_{i<j} a(e_m, e_i, e_j) b(e_i, e_j, e_k).
FqMatrix compose(const Trivector& b, const Trivector& a);

}  // namespace k3g16
