#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "k3g16/linalg.hpp"

namespace k3g16 {

class Rng;

using Exponents = std::vector<std::uint8_t>;

std::uint64_t binomial(unsigned n, unsigned k);
// Number of degree-d monomials in n variables.
std::size_t monomial_count(std::size_t nvars, unsigned degree);

// Graded-lexicographic order, largest first: x0^d, x0^{d-1}x1, ...
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Degree-d monomials in n variables in the fixed order, with ranking.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t nvars, unsigned degree);
  std::size_t nvars() const { return n_; }
  unsigned degree() const { return d_; }
  std::size_t size() const { return monos_.size(); }
  const Exponents& operator[](std::size_t i) const { return monos_[i]; }
  std::size_t index(std::span<const std::uint8_t> e) const;
  // Product table: index of monos_a[i] * (*this)[j] in the basis of degree d_a + d.
  std::vector<std::uint32_t> product_table(const MonomialBasis& other) const;

 private:
  std::size_t n_;
  unsigned d_;
  std::vector<Exponents> monos_;
};

// Shared cached instances.
const MonomialBasis& monomial_basis(std::size_t nvars, unsigned degree);

// Homogeneous polynomial over F_p.
class MPoly {
 public:
  using Terms = std::map<Exponents, Elem, GradedLexGreater>;

  MPoly(const Field& f, std::size_t nvars, unsigned degree) : f_(f), n_(nvars), d_(degree) {}
  static MPoly from_dense(const Field& f, std::size_t nvars, unsigned degree, std::span<const Elem> coeffs);
  static MPoly monomial(const Field& f, const Exponents& e, Elem c = 1);
  static MPoly variable(const Field& f, std::size_t nvars, std::size_t i);
  static MPoly linear(const Field& f, std::span<const Elem> coeffs);
  // Quadric wᵀ G w for symmetric G.
  static MPoly from_gram(const FqMatrix& g);

  const Field& field() const { return f_; }
  std::size_t nvars() const { return n_; }
  unsigned degree() const { return d_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  Elem coeff(const Exponents& e) const;
  void add_term(const Exponents& e, Elem c);
  Vec dense() const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(Elem c) const;
  MPoly pow(unsigned e) const;
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.terms_ == b.terms_;
  }

  Elem evaluate(std::span<const Elem> pt) const;
  Fp2 evaluate(const QuadExt& ext, std::span<const Fp2> pt) const;
  MPoly derivative(std::size_t var) const;
  Vec gradient_at(std::span<const Elem> pt) const;
  // Substitute old variable i = Σ_j emb(i, j) y_j.
  MPoly restrict(const FqMatrix& emb) const;
  // Gram matrix of a quadric (off-diagonal = half the coefficient).
  FqMatrix gram() const;
  std::string to_string(const std::string& var = "x") const;

 private:
  Field f_;
  std::size_t n_;
  unsigned d_;
  Terms terms_;
};

// Evaluate all degree-d monomials at pt, in basis order.
Vec monomial_values(const Field& f, const MonomialBasis& basis, std::span<const Elem> pt);

struct SketchOptions {
  std::size_t margin = 64;
  int max_attempts = 3;
};

struct IdealDim {
  std::size_t dim = 0;
  bool sketched = false;
  int attempts = 0;
};

// Dimension of the degree-d piece of the ideal generated by gens.
IdealDim homogeneous_ideal_dim(const std::vector<MPoly>& gens, unsigned d, Rng& rng,
                               const SketchOptions& opts = {});
// Exact (unsketched) variant, used to cross-check the sketch.
std::size_t homogeneous_ideal_dim_exact(const std::vector<MPoly>& gens, unsigned d);

struct ZeroDimDegree {
  bool plateau = false;
  std::size_t degree = 0;         // stabilized Hilbert function value
  unsigned plateau_at = 0;        // first d with HF(d) = HF(d+1)
  std::vector<std::size_t> hilbert;  // HF(d) for d = start..last computed
  unsigned start = 0;
};

ZeroDimDegree zero_dim_degree(const std::vector<MPoly>& gens, Rng& rng, unsigned cap = 40,
                              const SketchOptions& opts = {});

// Interpolation of a degree-d form in n variables from (point, value) samples.
struct Interpolant {
  MPoly form;
  Subspace ambiguity;  // degree-d forms vanishing at every sample point
  bool unique() const { return ambiguity.dim() == 0; }
};
Interpolant interpolate(const Field& f, std::size_t nvars, unsigned d, const std::vector<Vec>& points,
                        std::span<const Elem> values);
// Several value columns sharing the same points (one elimination).
std::vector<Interpolant> interpolate_many(const Field& f, std::size_t nvars, unsigned d,
                                          const std::vector<Vec>& points, const FqMatrix& values);
// Degree-d forms vanishing at all points, as a subspace of coefficient vectors.
Subspace vanishing_forms(const Field& f, std::size_t nvars, unsigned d, const std::vector<Vec>& points);

// Roots in P¹ of a binary form.
struct BinaryRoot {
  Fp2 s;                // affine coordinate s/t when !at_infinity
  bool at_infinity = false;
  unsigned multiplicity = 1;
  bool rational() const { return at_infinity || s.rational(); }
};
struct BinaryRoots {
  std::vector<BinaryRoot> roots;  // over F_p and F_{p^2}
  unsigned residual = 0;          // degree of factors irreducible over F_{p^2}
  unsigned counted() const;       // Σ multiplicities
};
// coeffs[e] is the coefficient of s^e t^{d-e}.
BinaryRoots binary_form_roots(const Field& f, std::span<const Elem> coeffs, std::uint64_t seed = 1);

// Greatest common divisor of binary forms of one degree (same coefficient convention);
// empty when every form is zero.
Vec binary_form_gcd(const Field& f, const std::vector<Vec>& forms);

// Univariate polynomial helpers over F_p (coefficient i = x^i).
namespace upoly {
using Poly = std::vector<Elem>;
void trim(Poly& a);
int degree(const Poly& a);
Poly mul(const Field& f, const Poly& a, const Poly& b);
Poly sub(const Field& f, const Poly& a, const Poly& b);
std::pair<Poly, Poly> divmod(const Field& f, const Poly& a, const Poly& b);
Poly gcd(const Field& f, Poly a, Poly b);  // monic
Poly powmod(const Field& f, Poly base, std::uint64_t e, const Poly& mod);
Elem eval(const Field& f, const Poly& a, Elem x);
}  // namespace upoly

}  // namespace k3g16
