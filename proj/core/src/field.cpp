#include "k3g16/field.hpp"

#include <algorithm>

#include "k3g16/errors.hpp"

namespace k3g16 {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(std::uint64_t p) : p_(p), small_(p < (1ULL << 32)), nonres_(0) {
  require(p >= 5 && p < (1ULL << 61) && is_prime(p), ErrorCode::invalid_argument,
          "modulus must be a prime with 5 <= p < 2^61");
  for (Elem s = 2;; ++s) {
    if (!is_square(s)) {
      nonres_ = s;
      break;
    }
  }
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Elem>(r);
}

std::int64_t Field::to_signed(Elem a) const {
  if (a > p_ / 2) return -static_cast<std::int64_t>(p_ - a);
  return static_cast<std::int64_t>(a);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  require(a != 0, ErrorCode::internal, "inverse of zero");
  return pow(a, p_ - 2);
}

bool Field::is_square(Elem a) const { return a == 0 || pow(a, (p_ - 1) / 2) == 1; }

std::optional<Elem> Field::sqrt(Elem a) const {
  if (a == 0) return Elem{0};
  if (!is_square(a)) return std::nullopt;
  // Tonelli–Shanks.
  std::uint64_t q = p_ - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Elem z = nonres_;
  Elem c = pow(z, q);
  Elem r = pow(a, (q + 1) / 2);
  Elem t = pow(a, q);
  int m = s;
  while (t != 1) {
    int i = 0;
    Elem tt = t;
    while (tt != 1) {
      tt = mul(tt, tt);
      ++i;
    }
    Elem b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
    r = mul(r, b);
    c = mul(b, b);
    t = mul(t, c);
    m = i;
  }
  return std::min(r, p_ - r);
}

Fp2 QuadExt::inv(Fp2 x) const {
  Elem n = norm(x);
  Elem ni = f_.inv(n);
  Fp2 c = conj(x);
  return {f_.mul(c.a, ni), f_.mul(c.b, ni)};
}

Fp2 QuadExt::pow(Fp2 x, std::uint64_t e) const {
  Fp2 r{1, 0};
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Fp2 QuadExt::sqrt_base(Elem a) const {
  if (auto r = f_.sqrt(a)) return {*r, 0};
  // a = s·c² with c ∈ F_p, so √a = c·θ.
  auto c = f_.sqrt(f_.div(a, s_));
  require(c.has_value(), ErrorCode::internal, "square root in F_p^2");
  return {0, *c};
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::seed_not_generic: return "SeedNotGeneric";
    case ErrorCode::non_generic_point: return "NonGenericPoint";
    case ErrorCode::non_generic_plane: return "NonGenericPlane";
    case ErrorCode::on_base_locus: return "OnBaseLocus";
    case ErrorCode::line_in_x: return "LineInX";
    case ErrorCode::point_on_peskine: return "PointOnPeskine";
    case ErrorCode::not_on_peskine: return "NotOnPeskine";
    case ErrorCode::degenerate_line: return "DegenerateLine";
    case ErrorCode::inconsistent: return "Inconsistent";
    case ErrorCode::not_antisymmetric: return "NotAntisymmetric";
    case ErrorCode::sketch_disagreement: return "SketchDisagreement";
    case ErrorCode::state_mismatch: return "StateMismatch";
    case ErrorCode::corrupt_state: return "CorruptState";
    case ErrorCode::internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace k3g16
