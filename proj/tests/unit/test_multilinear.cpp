#include "doctest.h"

#include "k3g16/errors.hpp"
#include "k3g16/multilinear.hpp"
#include "k3g16/rng.hpp"

using namespace k3g16;

namespace {

const Field F(101);

Trivector random_trivector(Rng& rng, Variance v = Variance::primal) {
  return Trivector::from_coeffs(F, 10, rng.vector(F, 120), v);
}

}  // namespace

TEST_CASE("schur dimensions") {
  CHECK(schur_basis(4, Shape::S2).dim == 10);
  CHECK(schur_basis(4, Shape::S3).dim == 20);
  CHECK(schur_basis(4, Shape::S21).dim == 20);
  CHECK(schur_basis(10, Shape::wedge2).dim == 45);
  CHECK(schur_basis(10, Shape::wedge3).dim == 120);
  CHECK(schur::s21_space(F).dim() == 20);
}

TEST_CASE("wedge indices are lexicographic") {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j) CHECK(pair_index(i, j, 10) == idx++);
  idx = 0;
  for (const auto& [i, j, k] : triple_list(10)) CHECK(triple_index(i, j, k, 10) == idx++);
  CHECK(idx == 120);
}

TEST_CASE("s21 projection") {
  FqMatrix pr = schur::s21_projector(F);
  CHECK(pr * pr == pr);
  CHECK((schur::sym_matrix(F) * pr).is_zero());
  CHECK(rank(pr) == 20);
  // (x·w)² ⊗ x is the symmetric tensor of the cube (x·w)³.
  Rng rng(1, "s21");
  Vec x = rng.nonzero_vector(F, 4);
  Vec q(10);
  {
    std::size_t a = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) q[a++] = i == j ? F.mul(x[i], x[i]) : F.mul(2, F.mul(x[i], x[j]));
  }
  CHECK(is_zero(schur::s21_project(F, schur::tensor(F, q, x))));
  // Projection lands in ker(sym) for random tensors.
  for (int i = 0; i < 10; ++i) {
    Vec r = rng.vector(F, 40);
    CHECK(is_zero(schur::sym_matrix(F).apply(schur::s21_project(F, r))));
  }
  CHECK(rank(schur::sym_matrix(F) * schur::iota_matrix(F)) == 20);
  CHECK(schur::sym_matrix(F) * schur::iota_matrix(F) == FqMatrix::identity(F, 20));
}

TEST_CASE("trivector_from_tensor") {
  std::vector<Elem> c(1000, 0);
  auto put = [&](int i, int j, int k, Elem v) { c[(i * 10 + j) * 10 + k] = v; };
  put(0, 1, 2, 1);
  put(1, 2, 0, 1);
  put(2, 0, 1, 1);
  put(1, 0, 2, 100);
  put(0, 2, 1, 100);
  put(2, 1, 0, 100);
  Trivector t = Trivector::from_tensor(F, 10, c);
  CHECK(t.coeff(0, 1, 2) == 1);
  Vec rest(t.coeffs().begin() + 1, t.coeffs().end());
  CHECK(is_zero(rest));
  std::vector<Elem> s(1000, 0);
  s[(0 * 10 + 1) * 10 + 2] = s[(1 * 10 + 0) * 10 + 2] = 1;
  CHECK_THROWS_AS(Trivector::from_tensor(F, 10, s), Error);
}

TEST_CASE("contract and flattening") {
  Rng rng(2, "contract");
  Trivector t = random_trivector(rng);
  CHECK(t.contract(Vec(10, 0)).is_zero());
  for (int i = 0; i < 100; ++i) {
    Vec v = rng.nonzero_vector(F, 10);
    FqMatrix m = t.contract(v);
    CHECK(m.is_skew());
    CHECK(is_zero(m.apply(v)));
    CHECK(rank(m) == 8);
  }
  Vec u = rng.vector(F, 10), v = rng.vector(F, 10), w = rng.vector(F, 10);
  CHECK(t.evaluate(u, v, w) == F.neg(t.evaluate(v, u, w)));
  CHECK(t.evaluate(u, v, w) == t.evaluate(v, w, u));
  FqMatrix fl = t.flattening();
  CHECK(fl.rows() == 10);
  CHECK(fl.cols() == 45);
  CHECK(fl.apply(wedge2(F, u, v))[3] == t.evaluate(u, v, Vec{0, 0, 0, 1, 0, 0, 0, 0, 0, 0}));
  CHECK(Trivector(F).flattening().is_zero());
  CHECK(rank(fl) == 10);
}

TEST_CASE("pullback and compose") {
  Rng rng(3, "compose");
  Trivector b = random_trivector(rng, Variance::primal);
  Trivector a = random_trivector(rng, Variance::dual);
  CHECK(compose(b, Trivector(F, 10, Variance::dual)).is_zero());
  int invertible = 0;
  for (int i = 0; i < 20; ++i) {
    Trivector bb = random_trivector(rng, Variance::primal);
    Trivector aa = random_trivector(rng, Variance::dual);
    invertible += det(compose(bb, aa)) != 0;
  }
  CHECK(invertible >= 18);
  FqMatrix g = rng.matrix(F, 10, 10);
  Trivector pb = a.pulled_back(g);
  Vec u = rng.vector(F, 10), v = rng.vector(F, 10), w = rng.vector(F, 10);
  CHECK(pb.evaluate(u, v, w) == a.evaluate(g.apply(u), g.apply(v), g.apply(w)));
  Elem s = 0;
  Trivector n = a.normalized(&s);
  CHECK(F.mul(s, a.coeffs()[0]) == n.coeffs()[0]);
  (void)b;
}
