#include "k3g16/mpoly.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

#include "k3g16/errors.hpp"
#include "k3g16/rng.hpp"

namespace k3g16 {

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t monomial_count(std::size_t nvars, unsigned degree) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  return binomial(static_cast<unsigned>(degree + nvars - 1), static_cast<unsigned>(nvars - 1));
}

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;
  return a > b;
}

namespace {

void enumerate(std::size_t n, unsigned d, Exponents& cur, std::size_t pos, std::vector<Exponents>& out) {
  if (pos + 1 == n) {
    cur[pos] = static_cast<std::uint8_t>(d);
    out.push_back(cur);
    return;
  }
  for (unsigned e = d + 1; e-- > 0;) {
    cur[pos] = static_cast<std::uint8_t>(e);
    enumerate(n, d - e, cur, pos + 1, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t nvars, unsigned degree) : n_(nvars), d_(degree) {
  require(nvars >= 1 && degree < 256, ErrorCode::invalid_argument, "monomial basis shape");
  Exponents cur(nvars, 0);
  monos_.reserve(monomial_count(nvars, degree));
  enumerate(nvars, degree, cur, 0, monos_);
}

std::size_t MonomialBasis::index(std::span<const std::uint8_t> e) const {
  std::size_t idx = 0;
  unsigned r = d_;
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const unsigned k = static_cast<unsigned>(n_ - i - 2);
    for (unsigned v = e[i] + 1; v <= r; ++v) idx += binomial(r - v + k, k);
    r -= e[i];
  }
  return idx;
}

std::vector<std::uint32_t> MonomialBasis::product_table(const MonomialBasis& other) const {
  const MonomialBasis& target = monomial_basis(n_, d_ + other.d_);
  std::vector<std::uint32_t> tab(size() * other.size());
  Exponents sum(n_);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < other.size(); ++j) {
      for (std::size_t v = 0; v < n_; ++v) sum[v] = static_cast<std::uint8_t>(monos_[i][v] + other.monos_[j][v]);
      tab[i * other.size() + j] = static_cast<std::uint32_t>(target.index(sum));
    }
  return tab;
}

const MonomialBasis& monomial_basis(std::size_t nvars, unsigned degree) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, unsigned>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_unique<MonomialBasis>(nvars, degree);
  return *slot;
}

MPoly MPoly::from_dense(const Field& f, std::size_t nvars, unsigned degree, std::span<const Elem> coeffs) {
  const MonomialBasis& b = monomial_basis(nvars, degree);
  require(coeffs.size() == b.size(), ErrorCode::invalid_argument, "dense coefficient length");
  MPoly r(f, nvars, degree);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (coeffs[i]) r.terms_.emplace(b[i], coeffs[i]);
  return r;
}

MPoly MPoly::monomial(const Field& f, const Exponents& e, Elem c) {
  unsigned d = 0;
  for (auto v : e) d += v;
  MPoly r(f, e.size(), d);
  r.add_term(e, c);
  return r;
}

MPoly MPoly::variable(const Field& f, std::size_t nvars, std::size_t i) {
  Exponents e(nvars, 0);
  e[i] = 1;
  return monomial(f, e);
}

MPoly MPoly::linear(const Field& f, std::span<const Elem> coeffs) {
  MPoly r(f, coeffs.size(), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponents e(coeffs.size(), 0);
    e[i] = 1;
    r.add_term(e, coeffs[i]);
  }
  return r;
}

MPoly MPoly::from_gram(const FqMatrix& g) {
  const Field& f = g.field();
  const std::size_t n = g.rows();
  MPoly r(f, n, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Exponents e(n, 0);
      e[i] += 1;
      e[j] += 1;
      r.add_term(e, i == j ? g(i, i) : f.add(g(i, j), g(j, i)));
    }
  return r;
}

Elem MPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void MPoly::add_term(const Exponents& e, Elem c) {
  c = f_.reduce(c);
  if (!c) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second = f_.add(it->second, c);
  if (!it->second) terms_.erase(it);
}

Vec MPoly::dense() const {
  const MonomialBasis& b = monomial_basis(n_, d_);
  Vec v(b.size(), 0);
  for (const auto& [e, c] : terms_) v[b.index(e)] = c;
  return v;
}

MPoly MPoly::operator+(const MPoly& o) const {
  require(n_ == o.n_, ErrorCode::invalid_argument, "sum shape");
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  require(d_ == o.d_, ErrorCode::invalid_argument, "sum of forms of different degree");
  MPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + o.scaled(f_.neg(1)); }

MPoly MPoly::operator*(const MPoly& o) const {
  require(n_ == o.n_, ErrorCode::invalid_argument, "product shape");
  MPoly r(f_, n_, d_ + o.d_);
  Exponents e(n_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < n_; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      r.add_term(e, f_.mul(ca, cb));
    }
  return r;
}

MPoly MPoly::scaled(Elem c) const {
  MPoly r(f_, n_, d_);
  if (!c) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, f_.mul(v, c));
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = MPoly::monomial(f_, Exponents(n_, 0));
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Elem MPoly::evaluate(std::span<const Elem> pt) const {
  require(pt.size() == n_, ErrorCode::invalid_argument, "evaluation point length");
  std::vector<Vec> pw(n_, Vec(d_ + 1, 1));
  for (std::size_t i = 0; i < n_; ++i)
    for (unsigned k = 1; k <= d_; ++k) pw[i][k] = f_.mul(pw[i][k - 1], pt[i]);
  Elem s = 0;
  for (const auto& [e, c] : terms_) {
    Elem t = c;
    for (std::size_t i = 0; i < n_ && t; ++i)
      if (e[i]) t = f_.mul(t, pw[i][e[i]]);
    s = f_.add(s, t);
  }
  return s;
}

Fp2 MPoly::evaluate(const QuadExt& ext, std::span<const Fp2> pt) const {
  require(pt.size() == n_, ErrorCode::invalid_argument, "evaluation point length");
  std::vector<std::vector<Fp2>> pw(n_, std::vector<Fp2>(d_ + 1, Fp2{1, 0}));
  for (std::size_t i = 0; i < n_; ++i)
    for (unsigned k = 1; k <= d_; ++k) pw[i][k] = ext.mul(pw[i][k - 1], pt[i]);
  Fp2 s{0, 0};
  for (const auto& [e, c] : terms_) {
    Fp2 t{c, 0};
    for (std::size_t i = 0; i < n_; ++i)
      if (e[i]) t = ext.mul(t, pw[i][e[i]]);
    s = ext.add(s, t);
  }
  return s;
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly r(f_, n_, d_ ? d_ - 1 : 0);
  for (const auto& [e, c] : terms_) {
    if (!e[var]) continue;
    Exponents de = e;
    de[var] -= 1;
    r.add_term(de, f_.mul(c, e[var] % f_.p()));
  }
  return r;
}

Vec MPoly::gradient_at(std::span<const Elem> pt) const {
  Vec g(n_);
  for (std::size_t i = 0; i < n_; ++i) g[i] = derivative(i).evaluate(pt);
  return g;
}

MPoly MPoly::restrict(const FqMatrix& emb) const {
  require(emb.rows() == n_, ErrorCode::invalid_argument, "restriction embedding shape");
  const std::size_t m = emb.cols();
  std::vector<std::vector<MPoly>> pw(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    pw[i].push_back(MPoly::monomial(f_, Exponents(m, 0)));
    MPoly lin = MPoly::linear(f_, emb.row(i));
    for (unsigned k = 1; k <= d_; ++k) pw[i].push_back(pw[i].back() * lin);
  }
  MPoly r(f_, m, d_);
  for (const auto& [e, c] : terms_) {
    MPoly t = MPoly::monomial(f_, Exponents(m, 0), c);
    for (std::size_t i = 0; i < n_; ++i)
      if (e[i]) t = t * pw[i][e[i]];
    for (const auto& [te, tc] : t.terms_) r.add_term(te, tc);
  }
  return r;
}

FqMatrix MPoly::gram() const {
  require(d_ == 2, ErrorCode::invalid_argument, "gram of a non-quadric");
  FqMatrix g(f_, n_, n_);
  const Elem half = f_.inv(2);
  for (const auto& [e, c] : terms_) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      g(idx[0], idx[0]) = c;
    } else {
      g(idx[0], idx[1]) = g(idx[1], idx[0]) = f_.mul(c, half);
    }
  }
  return g;
}

std::string MPoly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!e[i]) continue;
      os << "*" << var << i;
      if (e[i] > 1) os << "^" << int(e[i]);
    }
  }
  return os.str();
}

Vec monomial_values(const Field& f, const MonomialBasis& basis, std::span<const Elem> pt) {
  const std::size_t n = basis.nvars();
  const unsigned d = basis.degree();
  std::vector<Vec> pw(n, Vec(d + 1, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned k = 1; k <= d; ++k) pw[i][k] = f.mul(pw[i][k - 1], pt[i]);
  Vec out(basis.size());
  for (std::size_t m = 0; m < basis.size(); ++m) {
    Elem t = 1;
    const Exponents& e = basis[m];
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) t = f.mul(t, pw[i][e[i]]);
    out[m] = t;
  }
  return out;
}

}  // namespace k3g16
