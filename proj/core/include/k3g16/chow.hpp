#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

// Exact integer intersection numbers on P(F^∨), on P³ and on a Hilbert square.
namespace k3g16::chow {

// Basis {1; H, h; hH, p; pH} with H² = hH − 9p, h² = 30p, h·p = 0, p² = 0.
class PFClass {
 public:
  enum Basis { one = 0, H = 1, h = 2, hH = 3, p = 4, pH = 5 };
  static constexpr std::array<int, 6> grading{0, 1, 1, 2, 2, 3};

  PFClass() { c_.fill(0); }
  static PFClass basis(Basis b, std::int64_t coeff = 1);

  std::int64_t operator[](Basis b) const { return c_[b]; }
  std::int64_t& operator[](Basis b) { return c_[b]; }
  PFClass operator+(const PFClass& o) const;
  PFClass operator-(const PFClass& o) const;
  PFClass operator*(const PFClass& o) const;
  PFClass scaled(std::int64_t k) const;
  PFClass pow(unsigned e) const;
  // (this)^{-1} for a class with constant term 1.
  PFClass inverse() const;
  PFClass graded(int d) const;
  // Coefficient of the point class pH.
  std::int64_t degree() const { return c_[pH]; }
  friend bool operator==(const PFClass& a, const PFClass& b) { return a.c_ == b.c_; }
  std::string to_string() const;

 private:
  std::array<std::int64_t, 6> c_;
};

// Every product of three basis elements is associative and every product commutes.
bool ring_consistent();

struct SegreReport {
  PFClass segre;
  PFClass expected;
  std::int64_t product_top = 0;   // top coefficient of s(N)·(1 + 2H)⁹
  std::int64_t cover_degree = 0;  // 2⁹ − product_top
  bool ok = false;
};
SegreReport segre_normal_check();

struct DegreeXReport {
  std::int64_t h3 = 0;    // H³
  std::int64_t hH2 = 0;   // h·H²
  bool ok = false;
};
DegreeXReport degree_x();

// Third finite difference of a Hilbert function sampled at consecutive degrees.
std::vector<std::int64_t> third_differences(const std::vector<std::size_t>& values);

struct ChernTReport {
  std::array<std::int64_t, 4> c{};  // coefficients of 1, x, x², x³
  bool ok = false;
};
// (1 − 3x)(1 − x)^{−8} in Z[x]/x⁴.
ChernTReport chern_t_check();

// Classes on NS = Z·L ⊕ Z·δ with q(L) = 30, q(δ) = −2, Fujiki constant 3.
struct HKLattice {
  static constexpr std::int64_t qL = 30;
  static constexpr std::int64_t qdelta = -2;
  static constexpr std::int64_t fujiki = 3;
  struct Class {
    std::int64_t l = 0;
    std::int64_t d = 0;
  };
  static std::int64_t q(Class a, Class b) { return a.l * b.l * qL + a.d * b.d * qdelta; }
  static std::int64_t top(Class a) { return fujiki * q(a, a) * q(a, a); }
  // D₁·D₂³.
  static std::int64_t mixed(Class a, Class b) { return fujiki * q(a, b) * q(b, b); }
};

struct StabilityCase {
  std::int64_t alpha = 0;
  std::int64_t beta_min = 0;   // least integer β with α·L·c₁³ − β·δ·c₁³ ≤ (3/4)c₁⁴
  bool exceeds_movable = false;  // β/α > 15/4
};
struct StabilityReport {
  std::int64_t q_c1 = 0;
  std::int64_t c1_4 = 0;
  std::int64_t three_quarters = 0;
  std::int64_t l_c1_3 = 0;
  std::int64_t delta_c1_3 = 0;
  // α ≤ bound_num / bound_den from the two inequalities.
  std::int64_t bound_num = 0;
  std::int64_t bound_den = 0;
  std::vector<StabilityCase> cases;
  bool ok = false;
  std::string verdict;
};
StabilityReport stability_check();

}  // namespace k3g16::chow
