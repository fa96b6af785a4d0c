#pragma once

#include <cstdint>
#include <optional>

namespace k3g16 {

using Elem = std::uint64_t;

bool is_prime(std::uint64_t n);

// Prime field F_p, 5 <= p < 2^61.
class Field {
 public:
  explicit Field(std::uint64_t p = 101);

  std::uint64_t p() const { return p_; }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    if (small_) return a * b % p_;
    return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Elem reduce(std::uint64_t v) const { return v % p_; }
  Elem from_int(std::int64_t v) const;
  // Representative in (-p/2, p/2].
  std::int64_t to_signed(Elem a) const;

  Elem pow(Elem a, std::uint64_t e) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool is_square(Elem a) const;
  std::optional<Elem> sqrt(Elem a) const;
  // Least quadratic non-residue; defines F_{p^2} = F_p[θ]/(θ² − s).
  Elem nonresidue() const { return nonres_; }

  bool small() const { return small_; }
  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
  bool small_;
  Elem nonres_;
};

// a + bθ with θ² = s.
struct Fp2 {
  Elem a = 0;
  Elem b = 0;
  bool is_zero() const { return a == 0 && b == 0; }
  bool rational() const { return b == 0; }
  friend bool operator==(const Fp2&, const Fp2&) = default;
};

class QuadExt {
 public:
  explicit QuadExt(const Field& f) : f_(f), s_(f.nonresidue()) {}
  const Field& base() const { return f_; }
  Elem s() const { return s_; }

  Fp2 embed(Elem a) const { return {a, 0}; }
  Fp2 add(Fp2 x, Fp2 y) const { return {f_.add(x.a, y.a), f_.add(x.b, y.b)}; }
  Fp2 sub(Fp2 x, Fp2 y) const { return {f_.sub(x.a, y.a), f_.sub(x.b, y.b)}; }
  Fp2 neg(Fp2 x) const { return {f_.neg(x.a), f_.neg(x.b)}; }
  Fp2 mul(Fp2 x, Fp2 y) const {
    return {f_.add(f_.mul(x.a, y.a), f_.mul(s_, f_.mul(x.b, y.b))),
            f_.add(f_.mul(x.a, y.b), f_.mul(x.b, y.a))};
  }
  Fp2 scale(Fp2 x, Elem c) const { return {f_.mul(x.a, c), f_.mul(x.b, c)}; }
  Fp2 conj(Fp2 x) const { return {x.a, f_.neg(x.b)}; }
  Elem norm(Fp2 x) const { return f_.sub(f_.mul(x.a, x.a), f_.mul(s_, f_.mul(x.b, x.b))); }
  Fp2 inv(Fp2 x) const;
  Fp2 pow(Fp2 x, std::uint64_t e) const;
  // Square root of an element of F_p inside F_{p^2}.
  Fp2 sqrt_base(Elem a) const;

 private:
  Field f_;
  Elem s_;
};

}  // namespace k3g16
