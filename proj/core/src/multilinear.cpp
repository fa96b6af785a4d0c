#include "k3g16/multilinear.hpp"

#include <map>
#include <mutex>
#include <string>

#include "k3g16/errors.hpp"
#include "k3g16/mpoly.hpp"

namespace k3g16 {

SchurBasis schur_basis(std::size_t n, Shape shape) {
  std::size_t d = 0;
  switch (shape) {
    case Shape::S2: d = n * (n + 1) / 2; break;
    case Shape::S3: d = n * (n + 1) * (n + 2) / 6; break;
    case Shape::wedge2: d = n * (n - 1) / 2; break;
    case Shape::wedge3: d = n * (n - 1) * (n - 2) / 6; break;
    case Shape::S21: d = n * (n + 1) * (n - 1) / 3; break;
  }
  return {n, shape, d};
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  // Pairs (0,1),(0,2),...,(0,n−1),(1,2),...
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::size_t triple_index(std::size_t i, std::size_t j, std::size_t k, std::size_t n) {
  std::size_t idx = 0;
  for (std::size_t a = 0; a < i; ++a) idx += (n - a - 1) * (n - a - 2) / 2;
  const std::size_t m = n - i - 1;
  return idx + pair_index(j - i - 1, k - i - 1, m);
}

const std::vector<std::pair<std::size_t, std::size_t>>& pair_list(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& v = cache[n];
  if (v.empty())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) v.emplace_back(i, j);
  return v;
}

const std::vector<std::array<std::size_t, 3>>& triple_list(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<std::array<std::size_t, 3>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& v = cache[n];
  if (v.empty())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) v.push_back({i, j, k});
  return v;
}

Vec wedge2(const Field& f, std::span<const Elem> u, std::span<const Elem> v) {
  const std::size_t n = u.size();
  Vec w;
  w.reserve(n * (n - 1) / 2);
  for (auto [i, j] : pair_list(n)) w.push_back(f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i])));
  return w;
}

namespace schur {

namespace {

const MonomialBasis& quad() { return monomial_basis(kV, 2); }
const MonomialBasis& cubic() { return monomial_basis(kV, 3); }

}  // namespace

FqMatrix sym_matrix(const Field& f) {
  FqMatrix s(f, kS3, kS2V);
  for (std::size_t a = 0; a < kS2; ++a)
    for (std::size_t k = 0; k < kV; ++k) {
      Exponents e = quad()[a];
      e[k] += 1;
      s(cubic().index(e), a * kV + k) = 1;
    }
  return s;
}

FqMatrix iota_matrix(const Field& f) {
  FqMatrix m(f, kS2V, kS3);
  const Elem third = f.inv(3);
  for (std::size_t c = 0; c < kS3; ++c) {
    const Exponents& e = cubic()[c];
    for (std::size_t k = 0; k < kV; ++k) {
      if (!e[k]) continue;
      Exponents de = e;
      de[k] -= 1;
      m(quad().index(de) * kV + k, c) = f.mul(third, e[k]);
    }
  }
  return m;
}

FqMatrix s21_projector(const Field& f) {
  return FqMatrix::identity(f, kS2V) - iota_matrix(f) * sym_matrix(f);
}

Subspace s21_space(const Field& f) { return kernel(sym_matrix(f)); }

Vec tensor(const Field& f, std::span<const Elem> q, std::span<const Elem> l) {
  Vec t(kS2V);
  for (std::size_t a = 0; a < kS2; ++a)
    for (std::size_t k = 0; k < kV; ++k) t[a * kV + k] = f.mul(q[a], l[k]);
  return t;
}

Vec s21_project(const Field& f, std::span<const Elem> t) { return s21_projector(f).apply(t); }

Vec s21_coordinates(const Field& f, std::span<const Elem> t) {
  static thread_local std::map<std::uint64_t, Subspace> cache;
  auto it = cache.find(f.p());
  if (it == cache.end()) it = cache.emplace(f.p(), s21_space(f)).first;
  auto c = it->second.coordinates(t);
  require(c.has_value(), ErrorCode::internal, "tensor outside S_{2,1}");
  return *c;
}

}  // namespace schur

Trivector::Trivector(const Field& f, std::size_t dim, Variance v)
    : f_(f), n_(dim), var_(v), c_(dim * (dim - 1) * (dim - 2) / 6, 0) {}

Trivector Trivector::from_coeffs(const Field& f, std::size_t dim, std::span<const Elem> coeffs, Variance v) {
  Trivector t(f, dim, v);
  require(coeffs.size() == t.c_.size(), ErrorCode::invalid_argument, "trivector coefficient count");
  for (std::size_t i = 0; i < coeffs.size(); ++i) t.c_[i] = f.reduce(coeffs[i]);
  return t;
}

Trivector Trivector::from_tensor(const Field& f, std::size_t n, std::span<const Elem> c, Variance v) {
  require(c.size() == n * n * n, ErrorCode::invalid_argument, "tensor size");
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return c[(i * n + j) * n + k]; };
  std::size_t violations = 0;
  std::string first;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Elem x = at(i, j, k);
        bool ok = f.add(x, at(j, i, k)) == 0 && f.add(x, at(i, k, j)) == 0 && f.add(x, at(k, j, i)) == 0;
        if (!ok) {
          if (!violations)
            first = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
          ++violations;
        }
      }
  require(violations == 0, ErrorCode::not_antisymmetric,
          "tensor is not alternating at " + first + " (" + std::to_string(violations) + " violating index triples)");
  Trivector t(f, n, v);
  for (const auto& [i, j, k] : triple_list(n)) t.set(i, j, k, at(i, j, k));
  return t;
}

Elem Trivector::at(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j || j == k || i == k) return 0;
  bool neg = false;
  if (i > j) std::swap(i, j), neg = !neg;
  if (j > k) std::swap(j, k), neg = !neg;
  if (i > j) std::swap(i, j), neg = !neg;
  const Elem v = coeff(i, j, k);
  return neg ? f_.neg(v) : v;
}

FqMatrix Trivector::contract(std::span<const Elem> v) const {
  require(v.size() == n_, ErrorCode::invalid_argument, "contraction vector length");
  FqMatrix m(f_, n_, n_);
  for (const auto& [i, j, k] : triple_list(n_)) {
    const Elem c = coeff(i, j, k);
    if (!c) continue;
    // t(v, e_a, e_b) collects terms where one slot is i, j or k.
    auto add = [&](std::size_t a, std::size_t b, std::size_t s, Elem val) {
      if (!v[s]) return;
      const Elem x = f_.mul(v[s], val);
      m(a, b) = f_.add(m(a, b), x);
      m(b, a) = f_.sub(m(b, a), x);
    };
    add(j, k, i, c);
    add(i, k, j, f_.neg(c));
    add(i, j, k, c);
  }
  return m;
}

Elem Trivector::evaluate(std::span<const Elem> u, std::span<const Elem> v, std::span<const Elem> w) const {
  FqMatrix m = contract(u);
  return dot(f_, v, m.apply(w));
}

FqMatrix Trivector::flattening() const {
  FqMatrix m(f_, n_, n_ * (n_ - 1) / 2);
  for (const auto& [i, j, k] : triple_list(n_)) {
    const Elem c = coeff(i, j, k);
    if (!c) continue;
    m(k, pair_index(i, j, n_)) = c;
    m(j, pair_index(i, k, n_)) = f_.neg(c);
    m(i, pair_index(j, k, n_)) = c;
  }
  return m;
}

Trivector Trivector::pulled_back(const FqMatrix& g) const {
  require(g.rows() == n_ && g.cols() == n_, ErrorCode::invalid_argument, "substitution shape");
  Trivector out(f_, n_, var_);
  std::vector<FqMatrix> cols;
  for (std::size_t a = 0; a < n_; ++a) cols.push_back(contract(g.col_vec(a)));
  for (const auto& [a, b, c] : triple_list(n_)) {
    Vec gb = g.col_vec(b), gc = g.col_vec(c);
    out.set(a, b, c, dot(f_, gb, cols[a].apply(gc)));
  }
  return out;
}

Trivector Trivector::normalized(Elem* scalar) const {
  for (Elem c : c_)
    if (c) {
      const Elem inv = f_.inv(c);
      if (scalar) *scalar = inv;
      return from_coeffs(f_, n_, k3g16::scale(f_, inv, c_), var_);
    }
  if (scalar) *scalar = 1;
  return *this;
}

FqMatrix compose(const Trivector& b, const Trivector& a) {
  require(b.dim() == a.dim() && b.variance() != a.variance(), ErrorCode::invalid_argument,
          "compose needs trivectors on dual spaces");
  FqMatrix fa = a.flattening();  // [m][(i,j)] = a(i,j,m) = a(m,i,j)
  FqMatrix fb = b.flattening();  // [k][(i,j)] = b(i,j,k)
  return fb * fa.transpose();
}

}  // namespace k3g16
