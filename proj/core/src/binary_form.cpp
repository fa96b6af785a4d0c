#include <algorithm>

#include "k3g16/errors.hpp"
#include "k3g16/mpoly.hpp"
#include "k3g16/rng.hpp"

namespace k3g16 {

namespace upoly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i]) return static_cast<int>(i);
  return -1;
}

Poly mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Poly sub(const Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Field& f, const Poly& a, const Poly& b) {
  const int db = degree(b);
  require(db >= 0, ErrorCode::invalid_argument, "division by zero polynomial");
  Poly r = a;
  trim(r);
  if (degree(r) < db) return {{}, r};
  Poly q(r.size() - db, 0);
  const Elem inv = f.inv(b[db]);
  for (int i = degree(r); i >= db; --i) {
    const Elem c = f.mul(r[i], inv);
    if (!c) continue;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(c, b[j]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly gcd(const Field& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const Elem inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv);
  return a;
}

Poly powmod(const Field& f, Poly base, std::uint64_t e, const Poly& mod) {
  Poly r{1};
  base = divmod(f, base, mod).second;
  while (e) {
    if (e & 1) r = divmod(f, mul(f, r, base), mod).second;
    base = divmod(f, mul(f, base, base), mod).second;
    e >>= 1;
  }
  return r;
}

Elem eval(const Field& f, const Poly& a, Elem x) {
  Elem s = 0;
  for (std::size_t i = a.size(); i-- > 0;) s = f.add(f.mul(s, x), a[i]);
  return s;
}

}  // namespace upoly

namespace {

using upoly::Poly;

Poly monic(const Field& f, Poly a) {
  upoly::trim(a);
  const Elem inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv);
  return a;
}

// Split a product of distinct monic factors, each of degree k, into the factors.
void equal_degree_split(const Field& f, const Poly& h, int k, Rng& rng, std::vector<Poly>& out) {
  const int dh = upoly::degree(h);
  if (dh <= k) {
    if (dh > 0) out.push_back(monic(f, h));
    return;
  }
  const std::uint64_t p = f.p();
  for (;;) {
    Poly b(dh, 0);
    for (auto& c : b) c = rng.uniform(f);
    upoly::trim(b);
    if (upoly::degree(b) < 1) continue;
    // b^{(p^k − 1)/2}; for k = 2 the exponent is (p+1)(p−1)/2.
    Poly w = (k == 1) ? upoly::powmod(f, b, (p - 1) / 2, h)
                      : upoly::powmod(f, upoly::powmod(f, b, p + 1, h), (p - 1) / 2, h);
    Poly g = upoly::gcd(f, h, upoly::sub(f, w, Poly{1}));
    const int dg = upoly::degree(g);
    if (dg <= 0 || dg == dh) continue;
    equal_degree_split(f, g, k, rng, out);
    equal_degree_split(f, upoly::divmod(f, h, g).first, k, rng, out);
    return;
  }
}

unsigned strip_factor(const Field& f, Poly& g, const Poly& factor) {
  unsigned m = 0;
  for (;;) {
    auto [q, r] = upoly::divmod(f, g, factor);
    if (!r.empty()) return m;
    g = q;
    ++m;
  }
}

}  // namespace

unsigned BinaryRoots::counted() const {
  unsigned s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

BinaryRoots binary_form_roots(const Field& f, std::span<const Elem> coeffs, std::uint64_t seed) {
  Poly g(coeffs.begin(), coeffs.end());
  upoly::trim(g);
  require(!g.empty(), ErrorCode::degenerate_line, "binary form is identically zero");
  const int d = static_cast<int>(coeffs.size()) - 1;
  BinaryRoots out;
  const int dg = upoly::degree(g);
  if (dg < d) {
    BinaryRoot inf;
    inf.at_infinity = true;
    inf.multiplicity = static_cast<unsigned>(d - dg);
    out.roots.push_back(inf);
  }
  if (dg <= 0) return out;
  Rng rng(seed, "binary-roots");
  const QuadExt ext(f);
  Poly work = monic(f, g);
  const Poly x{0, 1};
  Poly xp = upoly::powmod(f, x, f.p(), work);
  Poly h1 = upoly::gcd(f, work, upoly::sub(f, xp, x));
  std::vector<Poly> linear;
  equal_degree_split(f, h1, 1, rng, linear);
  std::sort(linear.begin(), linear.end());
  for (const auto& fac : linear) {
    BinaryRoot r;
    r.s = {f.neg(fac[0]), 0};
    r.multiplicity = strip_factor(f, work, fac);
    out.roots.push_back(r);
  }
  if (upoly::degree(work) >= 2) {
    Poly xp2 = upoly::powmod(f, upoly::powmod(f, x, f.p(), work), f.p(), work);
    Poly h2 = upoly::gcd(f, work, upoly::sub(f, xp2, x));
    std::vector<Poly> quads;
    equal_degree_split(f, h2, 2, rng, quads);
    std::sort(quads.begin(), quads.end());
    for (const auto& q : quads) {
      const unsigned m = strip_factor(f, work, q);
      // x² + b x + c: roots (−b ± √(b² − 4c)) / 2.
      const Elem b = q[1], c = q[0];
      const Fp2 disc = ext.sqrt_base(f.sub(f.mul(b, b), f.mul(4, c)));
      const Elem half = f.inv(2);
      const Fp2 mb{f.neg(b), 0};
      for (const Fp2& root : {ext.scale(ext.add(mb, disc), half), ext.scale(ext.sub(mb, disc), half)}) {
        BinaryRoot r;
        r.s = root;
        r.multiplicity = m;
        out.roots.push_back(r);
      }
    }
  }
  out.residual = static_cast<unsigned>(std::max(0, upoly::degree(work)));
  std::sort(out.roots.begin(), out.roots.end(), [](const BinaryRoot& a, const BinaryRoot& b) {
    if (a.at_infinity != b.at_infinity) return b.at_infinity;
    return std::pair(a.s.a, a.s.b) < std::pair(b.s.a, b.s.b);
  });
  return out;
}

Vec binary_form_gcd(const Field& f, const std::vector<Vec>& forms) {
  upoly::Poly g;
  std::size_t t_mult = 0;
  bool any = false;
  for (const Vec& form : forms) {
    upoly::Poly c(form.begin(), form.end());
    upoly::trim(c);
    if (c.empty()) continue;
    const std::size_t missing = form.size() - 1 - static_cast<std::size_t>(upoly::degree(c));
    t_mult = any ? std::min(t_mult, missing) : missing;
    g = any ? upoly::gcd(f, g, c) : upoly::gcd(f, c, c);
    any = true;
  }
  if (!any) return {};
  Vec out(g.begin(), g.end());
  out.resize(out.size() + t_mult, 0);
  return out;
}

}  // namespace k3g16
