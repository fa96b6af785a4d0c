#include "k3g16/chow.hpp"

#include <sstream>

namespace k3g16::chow {

namespace {

using B = PFClass::Basis;

// Product of two basis elements.
PFClass basis_product(int i, int j) {
  if (i == B::one) return PFClass::basis(static_cast<B>(j));
  if (j == B::one) return PFClass::basis(static_cast<B>(i));
  if (PFClass::grading[i] + PFClass::grading[j] > 3) return {};
  if (i > j) std::swap(i, j);
  PFClass r;
  switch (i * 6 + j) {
    case B::H * 6 + B::H:
      r[B::hH] = 1;
      r[B::p] = -9;
      break;
    case B::H * 6 + B::h:
      r[B::hH] = 1;
      break;
    case B::h * 6 + B::h:
      r[B::p] = 30;
      break;
    case B::H * 6 + B::hH:
    case B::h * 6 + B::hH:
      r[B::pH] = 30;
      break;
    case B::H * 6 + B::p:
      r[B::pH] = 1;
      break;
    default:  // h·p = 0
      break;
  }
  return r;
}

}  // namespace

PFClass PFClass::basis(Basis b, std::int64_t coeff) {
  PFClass r;
  r.c_[b] = coeff;
  return r;
}

PFClass PFClass::operator+(const PFClass& o) const {
  PFClass r;
  for (int i = 0; i < 6; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

PFClass PFClass::operator-(const PFClass& o) const { return *this + o.scaled(-1); }

PFClass PFClass::operator*(const PFClass& o) const {
  PFClass r;
  for (int i = 0; i < 6; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < 6; ++j)
      if (o.c_[j] != 0) r = r + basis_product(i, j).scaled(c_[i] * o.c_[j]);
  }
  return r;
}

PFClass PFClass::scaled(std::int64_t k) const {
  PFClass r;
  for (int i = 0; i < 6; ++i) r.c_[i] = c_[i] * k;
  return r;
}

PFClass PFClass::pow(unsigned e) const {
  PFClass r = basis(one);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

PFClass PFClass::inverse() const {
  // (1 + x)^{-1} = 1 − x + x² − x³, x nilpotent of order 4.
  const PFClass x = *this - basis(one);
  PFClass r = basis(one);
  PFClass term = basis(one);
  for (int k = 1; k <= 3; ++k) {
    term = term * x.scaled(-1);
    r = r + term;
  }
  return r;
}

PFClass PFClass::graded(int d) const {
  PFClass r;
  for (int i = 0; i < 6; ++i)
    if (grading[i] == d) r.c_[i] = c_[i];
  return r;
}

std::string PFClass::to_string() const {
  static const char* names[] = {"1", "H", "h", "hH", "p", "pH"};
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 6; ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] < 0 ? " - " : " + ");
    else if (c_[i] < 0) os << "-";
    const std::int64_t a = c_[i] < 0 ? -c_[i] : c_[i];
    if (i == 0) os << a;
    else if (a == 1) os << names[i];
    else os << a << names[i];
    first = false;
  }
  return first ? "0" : os.str();
}

bool ring_consistent() {
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const PFClass a = PFClass::basis(static_cast<B>(i));
      const PFClass b = PFClass::basis(static_cast<B>(j));
      if (!(a * b == b * a)) return false;
      for (int k = 0; k < 6; ++k) {
        const PFClass c = PFClass::basis(static_cast<B>(k));
        if (!((a * b) * c == a * (b * c))) return false;
      }
    }
  return true;
}

SegreReport segre_normal_check() {
  const PFClass one = PFClass::basis(B::one);
  const PFClass H = PFClass::basis(B::H);
  const PFClass h = PFClass::basis(B::h);
  SegreReport r;
  const PFClass a = one + PFClass::basis(B::p, 24);
  const PFClass b = one + H.scaled(2) - h;
  r.segre = a * b * (one + H).pow(10).inverse();
  r.expected = one + H.scaled(-8) - h + PFClass::basis(B::hH, 45) + PFClass::basis(B::p, -291) +
               PFClass::basis(B::pH, -4152);
  r.product_top = (r.segre * (one + H.scaled(2)).pow(9)).degree();
  r.cover_degree = (std::int64_t{1} << 9) - r.product_top;
  r.ok = r.segre == r.expected && r.product_top == 510 && r.cover_degree == 2;
  return r;
}

DegreeXReport degree_x() {
  const PFClass H = PFClass::basis(B::H);
  DegreeXReport r;
  r.h3 = H.pow(3).degree();
  r.hH2 = (PFClass::basis(B::h) * H.pow(2)).degree();
  r.ok = r.h3 == 21 && r.hH2 == 30;
  return r;
}

std::vector<std::int64_t> third_differences(const std::vector<std::size_t>& values) {
  std::vector<std::int64_t> d(values.begin(), values.end());
  for (int k = 0; k < 3 && !d.empty(); ++k) {
    for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = d[i + 1] - d[i];
    d.pop_back();
  }
  return d;
}

ChernTReport chern_t_check() {
  ChernTReport r;
  // (1 − x)^{−8} = Σ C(k+7, 7) x^k.
  const std::array<std::int64_t, 4> inv{1, 8, 36, 120};
  for (int k = 0; k < 4; ++k) r.c[k] = inv[k] - (k ? 3 * inv[k - 1] : 0);
  r.ok = r.c == std::array<std::int64_t, 4>{1, 5, 12, 12};
  return r;
}

StabilityReport stability_check() {
  using C = HKLattice::Class;
  const C L{1, 0}, delta{0, 1}, c1{2, -7};
  StabilityReport r;
  r.q_c1 = HKLattice::q(c1, c1);
  r.c1_4 = HKLattice::top(c1);
  r.three_quarters = 3 * r.c1_4 / 4;
  r.l_c1_3 = HKLattice::mixed(L, c1);
  r.delta_c1_3 = HKLattice::mixed(delta, c1);
  // c₁(B) = αL − βδ: α·Lc₁³ − β·δc₁³ ≤ (3/4)c₁⁴ with β ≤ 15α/4 gives α(4·Lc₁³ − 15·δc₁³) ≤ 4·(3/4)c₁⁴.
  r.bound_num = 4 * r.three_quarters;
  r.bound_den = 4 * r.l_c1_3 - 15 * r.delta_c1_3;
  bool all = r.bound_den > 0;
  for (std::int64_t alpha = 1; r.bound_den > 0 && alpha * r.bound_den <= r.bound_num; ++alpha) {
    StabilityCase c;
    c.alpha = alpha;
    const std::int64_t need = alpha * r.l_c1_3 - r.three_quarters;
    c.beta_min = need <= 0 ? 0 : (need + r.delta_c1_3 - 1) / r.delta_c1_3;
    c.exceeds_movable = 4 * c.beta_min > 15 * alpha;
    all = all && c.exceeds_movable && c.beta_min >= 4 * alpha;
    r.cases.push_back(c);
  }
  const bool numbers = r.q_c1 == 22 && r.c1_4 == 1452 && r.three_quarters == 1089 && r.l_c1_3 == 3960 &&
                       r.delta_c1_3 == 924;
  const bool cases = r.cases.size() == 2 && r.cases[0].beta_min == 4 && r.cases[1].beta_min == 8;
  r.ok = numbers && cases && all;
  r.verdict = r.ok ? "no destabilizing movable class" : "case analysis inconclusive";
  return r;
}

}  // namespace k3g16::chow
