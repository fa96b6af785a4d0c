#include "doctest.h"

#include "k3g16/errors.hpp"
#include "k3g16/linalg.hpp"
#include "k3g16/rng.hpp"

using namespace k3g16;

namespace {

const Field F(101);

FqMatrix random_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  return rng.matrix(F, rows, r) * rng.matrix(F, r, cols);
}

}  // namespace

TEST_CASE("field arithmetic") {
  CHECK(F.mul(50, 2) == 100);
  CHECK(F.add(100, 5) == 4);
  CHECK(F.mul(F.inv(37), 37) == 1);
  CHECK(F.nonresidue() == 2);
  for (Elem a = 1; a < 101; ++a) {
    auto s = F.sqrt(F.mul(a, a));
    REQUIRE(s.has_value());
    CHECK(F.mul(*s, *s) == F.mul(a, a));
  }
  CHECK_THROWS_AS(Field(2), Error);
  CHECK_THROWS_AS(Field(91), Error);
  Field big((1ULL << 61) - 1);
  CHECK(big.mul(big.inv(123456789), 123456789) == 1);
}

TEST_CASE("quadratic extension") {
  QuadExt e(F);
  Fp2 t{0, 1};
  CHECK(e.mul(t, t) == Fp2{2, 0});
  Fp2 x{17, 33};
  CHECK(e.mul(x, e.inv(x)) == Fp2{1, 0});
  Fp2 r = e.sqrt_base(3);  // 3 is a non-residue mod 101
  CHECK(e.mul(r, r) == Fp2{3, 0});
}

TEST_CASE("rank examples") {
  CHECK(rank(FqMatrix(F, 3, 3)) == 0);
  CHECK(rank(FqMatrix::identity(F, 3)) == 3);
  Rng rng(1, "rank");
  for (int i = 0; i < 20; ++i) {
    FqMatrix m = random_rank(rng, 7 + i, 12, 5);
    CHECK(rank(m) == 5);
    CHECK(rank(m.transpose()) == 5);
  }
}

TEST_CASE("random skew contraction has rank at most 8") {
  Rng rng(2, "skew");
  for (int trial = 0; trial < 100; ++trial) {
    // Contraction of a random alternating 3-form with its own argument.
    std::vector<Elem> t(1000, 0);
    for (int i = 0; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j)
        for (int k = j + 1; k < 10; ++k) {
          Elem c = rng.uniform(F);
          Elem m = F.neg(c);
          t[i * 100 + j * 10 + k] = t[j * 100 + k * 10 + i] = t[k * 100 + i * 10 + j] = c;
          t[j * 100 + i * 10 + k] = t[i * 100 + k * 10 + j] = t[k * 100 + j * 10 + i] = m;
        }
    Vec v = rng.nonzero_vector(F, 10);
    FqMatrix c(F, 10, 10);
    for (int a = 0; a < 10; ++a)
      for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) c(i, j) = F.add(c(i, j), F.mul(v[a], t[a * 100 + i * 10 + j]));
    CHECK(c.is_skew());
    std::size_t r = rank(c);
    CHECK(r % 2 == 0);
    CHECK(r <= 8);
    CHECK(is_zero(c.apply(v)));
  }
}

TEST_CASE("kernel examples") {
  CHECK(kernel(FqMatrix::identity(F, 4)).dim() == 0);
  Subspace k = kernel(FqMatrix::from_ints(F, {{1, 1}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.vector(0) == Vec{1, 100});
  Rng rng(3, "kernel");
  for (int i = 0; i < 20; ++i) {
    FqMatrix m = random_rank(rng, 9, 15, 6);
    Subspace ker = kernel(m);
    CHECK(ker.dim() + rank(m) == m.cols());
    for (std::size_t j = 0; j < ker.dim(); ++j) CHECK(is_zero(m.apply(ker.basis().row(j))));
  }
}

TEST_CASE("intersect and span_union") {
  Rng rng(4, "subspace");
  Subspace a = Subspace::spanned_by(rng.matrix(F, 4, 10));
  CHECK(intersect(a, a) == a);
  CHECK(span_union({a}) == a);
  Subspace h1 = kernel(rng.matrix(F, 1, 10));
  Subspace h2 = kernel(rng.matrix(F, 1, 10));
  CHECK(intersect(h1, h2).dim() == 8);
  for (int i = 0; i < 20; ++i) {
    Subspace x = Subspace::spanned_by(rng.matrix(F, 1 + i % 7, 12));
    Subspace y = Subspace::spanned_by(FqMatrix::vstack(x.basis().row_block(0, 1), rng.matrix(F, 3 + i % 5, 12)));
    CHECK(x.dim() + y.dim() == intersect(x, y).dim() + span_union(x, y).dim());
  }
}

TEST_CASE("subspace canonical form") {
  Rng rng(5, "canon");
  FqMatrix m = rng.matrix(F, 3, 8);
  FqMatrix g = rng.matrix(F, 3, 3);
  REQUIRE(det(g) != 0);
  CHECK(Subspace::spanned_by(m) == Subspace::spanned_by(g * m));
  Subspace s = Subspace::spanned_by(m);
  for (std::size_t i = 1; i < s.pivots().size(); ++i) CHECK(s.pivots()[i] > s.pivots()[i - 1]);
  Vec v = s.vector(1);
  auto c = s.coordinates(v);
  REQUIRE(c.has_value());
  CHECK(*c == Vec{0, 1, 0});
  CHECK(s.annihilator().dim() == 5);
}

TEST_CASE("solve") {
  Vec e1{1, 0, 0};
  SolveResult r = solve(FqMatrix::identity(F, 3), e1);
  CHECK(r.consistent);
  CHECK(r.solution == e1);
  CHECK_FALSE(solve(FqMatrix(F, 3, 3), e1).consistent);
  Rng rng(6, "solve");
  FqMatrix m = rng.matrix(F, 12, 8);
  Vec x = rng.vector(F, 8);
  SolveResult s = solve(m, m.apply(x));
  REQUIRE(s.consistent);
  CHECK(m.apply(s.solution) == m.apply(x));
}

TEST_CASE("determinant, inverse, adjugate") {
  Rng rng(7, "det");
  for (int i = 0; i < 10; ++i) {
    FqMatrix a = rng.matrix(F, 6, 6);
    FqMatrix b = rng.matrix(F, 6, 6);
    CHECK(det(a * b) == F.mul(det(a), det(b)));
    if (auto inv = inverse(a)) CHECK(a * *inv == FqMatrix::identity(F, 6));
    FqMatrix adj = adjugate(a);
    CHECK(a * adj == FqMatrix::identity(F, 6).scaled(det(a)));
  }
  FqMatrix s = random_rank(rng, 5, 5, 4);
  FqMatrix adj = adjugate(s);
  CHECK(rank(adj) == 1);
  CHECK((s * adj).is_zero());
}

TEST_CASE("row reducer matches on large primes and blocks") {
  Field big((1ULL << 61) - 1);
  Rng rng(8, "big");
  FqMatrix m = rng.matrix(big, 20, 6) * rng.matrix(big, 6, 30);
  CHECK(rank(m) == 6);
  Field mid(4294967311ULL);
  FqMatrix m2 = rng.matrix(mid, 40, 9) * rng.matrix(mid, 9, 50);
  CHECK(rank(m2) == 9);
  RowReducer red(F, 200);
  FqMatrix big_block = random_rank(rng, 300, 200, 170);
  red.insert_block(big_block);
  CHECK(red.rank() == 170);
}

TEST_CASE("determinism") {
  Rng a(9, "x"), b(9, "x"), c(9, "y");
  Vec va = a.vector(F, 50), vb = b.vector(F, 50), vc = c.vector(F, 50);
  CHECK(va == vb);
  CHECK(va != vc);
}
