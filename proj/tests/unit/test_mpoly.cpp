#include "doctest.h"

#include "k3g16/errors.hpp"
#include "k3g16/mpoly.hpp"
#include "k3g16/rng.hpp"

using namespace k3g16;

namespace {

const Field F(101);

MPoly random_form(Rng& rng, std::size_t n, unsigned d) {
  return MPoly::from_dense(F, n, d, rng.vector(F, monomial_count(n, d)));
}

Exponents ex(std::initializer_list<int> e) {
  Exponents r;
  for (int v : e) r.push_back(static_cast<std::uint8_t>(v));
  return r;
}

}  // namespace

TEST_CASE("monomial basis order and ranking") {
  const MonomialBasis& b = monomial_basis(4, 2);
  CHECK(b.size() == 10);
  CHECK(b[0] == ex({2, 0, 0, 0}));
  CHECK(b[1] == ex({1, 1, 0, 0}));
  CHECK(b[9] == ex({0, 0, 0, 2}));
  for (std::size_t n : {1, 3, 4, 10}) {
    for (unsigned d : {0u, 1u, 3u, 5u}) {
      const MonomialBasis& bb = monomial_basis(n, d);
      CHECK(bb.size() == monomial_count(n, d));
      for (std::size_t i = 0; i < bb.size(); ++i) CHECK(bb.index(bb[i]) == i);
      for (std::size_t i = 1; i < bb.size(); ++i) CHECK(GradedLexGreater{}(bb[i - 1], bb[i]));
    }
  }
}

TEST_CASE("evaluate") {
  MPoly w0sq = MPoly::monomial(F, ex({2, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  Vec pt(10, 0);
  pt[0] = 2;
  CHECK(w0sq.evaluate(pt) == 4);
  MPoly zero(F, 10, 3);
  Rng rng(1, "eval");
  CHECK(zero.evaluate(rng.vector(F, 10)) == 0);
  // Product evaluates to the product of values.
  MPoly a = random_form(rng, 4, 2), b = random_form(rng, 4, 3);
  Vec q = rng.vector(F, 4);
  CHECK((a * b).evaluate(q) == F.mul(a.evaluate(q), b.evaluate(q)));
  // Homogeneity.
  CHECK(b.evaluate(scale(F, 7, q)) == F.mul(F.pow(7, 3), b.evaluate(q)));
  // Extension evaluation agrees on base points.
  QuadExt e(F);
  std::vector<Fp2> q2;
  for (auto v : q) q2.push_back({v, 0});
  CHECK(b.evaluate(e, q2) == Fp2{b.evaluate(q), 0});
}

TEST_CASE("restrict") {
  Rng rng(2, "restrict");
  MPoly q = random_form(rng, 10, 2);
  FqMatrix line = rng.matrix(F, 10, 2);
  MPoly r = q.restrict(line);
  CHECK(r.nvars() == 2);
  CHECK(r.degree() == 2);
  Vec y = rng.vector(F, 2);
  CHECK(r.evaluate(y) == q.evaluate(line.apply(y)));
  MPoly w0w1 = MPoly::monomial(F, ex({1, 1, 0}));
  FqMatrix emb = FqMatrix::from_ints(F, {{1, 0}, {1, 0}, {0, 1}});
  CHECK(w0w1.restrict(emb).coeff(ex({2, 0})) == 1);
}

TEST_CASE("derivative and gram") {
  Rng rng(3, "gram");
  MPoly q = random_form(rng, 5, 2);
  FqMatrix g = q.gram();
  CHECK(g.is_symmetric());
  CHECK(MPoly::from_gram(g) == q);
  Vec x = rng.vector(F, 5);
  CHECK(dot(F, x, g.apply(x)) == q.evaluate(x));
  Vec grad = q.gradient_at(x);
  CHECK(grad == scale(F, 2, g.apply(x)));
  // Euler relation.
  MPoly c = random_form(rng, 4, 3);
  Vec y = rng.vector(F, 4);
  CHECK(dot(F, y, c.gradient_at(y)) == F.mul(3, c.evaluate(y)));
}

TEST_CASE("homogeneous_ideal_dim examples") {
  Rng rng(4, "ideal");
  MPoly w0sq = MPoly::monomial(F, ex({2, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(homogeneous_ideal_dim({w0sq}, 3, rng).dim == 10);
  // Complete intersection of two quadrics in P^3: HF(d) = 4 for d ≥ 2... (dim I_d = C(d+3,3) − 4d).
  std::vector<MPoly> ci{random_form(rng, 4, 2), random_form(rng, 4, 2)};
  CHECK(homogeneous_ideal_dim(ci, 3, rng).dim == 20 - 12);
}

TEST_CASE("sketched and exact Macaulay ranks agree") {
  Rng rng(5, "sketch");
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = 3 + inst % 3;
    const unsigned d = 4 + inst % 2;
    std::vector<MPoly> gens;
    const int ngens = 3 + inst % 6;
    for (int g = 0; g < ngens; ++g) {
      // Products with a shared factor keep the rank below full.
      MPoly common = random_form(rng, n, 1);
      gens.push_back(common * random_form(rng, n, 1 + g % 2));
    }
    SketchOptions opts;
    opts.margin = 2;  // force the sketch path
    IdealDim s = homogeneous_ideal_dim(gens, d, rng, opts);
    CHECK(s.dim == homogeneous_ideal_dim_exact(gens, d));
  }
}

TEST_CASE("zero_dim_degree") {
  Rng rng(6, "zdd");
  std::vector<MPoly> pt{MPoly::variable(F, 4, 0), MPoly::variable(F, 4, 1), MPoly::variable(F, 4, 2)};
  ZeroDimDegree z = zero_dim_degree(pt, rng);
  CHECK(z.plateau);
  CHECK(z.degree == 1);
  // Three generic quadrics in P^3 meet in 8 points.
  std::vector<MPoly> ci{random_form(rng, 4, 2), random_form(rng, 4, 2), random_form(rng, 4, 2)};
  ZeroDimDegree z8 = zero_dim_degree(ci, rng);
  CHECK(z8.plateau);
  CHECK(z8.degree == 8);
  // Three conics in P^2 through 4 common points (products of lines).
  Rng r2(7, "conics");
  std::vector<Vec> pts;
  for (int i = 0; i < 4; ++i) pts.push_back(r2.nonzero_vector(F, 3));
  Subspace conics = vanishing_forms(F, 3, 2, pts);
  REQUIRE(conics.dim() == 2);
  std::vector<MPoly> cg{MPoly::from_dense(F, 3, 2, conics.vector(0)), MPoly::from_dense(F, 3, 2, conics.vector(1))};
  CHECK(zero_dim_degree(cg, r2).degree == 4);
}

TEST_CASE("interpolate") {
  Rng rng(8, "interp");
  std::vector<Vec> pts;
  Vec vals;
  MPoly lin = MPoly::linear(F, Vec{1, 1, 0});
  for (int i = 0; i < 6; ++i) {
    pts.push_back(rng.vector(F, 3));
    vals.push_back(lin.evaluate(pts.back()));
  }
  Interpolant it = interpolate(F, 3, 1, pts, vals);
  CHECK(it.unique());
  CHECK(it.form == lin);
  // Round trip on random forms.
  for (int k = 0; k < 5; ++k) {
    MPoly f = random_form(rng, 4, 3);
    std::vector<Vec> p2;
    Vec v2;
    for (int i = 0; i < 40; ++i) {
      p2.push_back(rng.vector(F, 4));
      v2.push_back(f.evaluate(p2.back()));
    }
    Interpolant r = interpolate(F, 4, 3, p2, v2);
    CHECK(r.unique());
    CHECK(r.form == f);
    v2[3] = F.add(v2[3], 1);
    CHECK_THROWS_AS(interpolate(F, 4, 3, p2, v2), Error);
  }
}

TEST_CASE("binary_form_roots") {
  // t² − 1 as a binary form s² − t²: coefficients of s^e t^{2−e}.
  BinaryRoots r = binary_form_roots(F, Vec{100, 0, 1});
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0].s == Fp2{1, 0});
  CHECK(r.roots[1].s == Fp2{100, 0});
  BinaryRoots d = binary_form_roots(F, Vec{0, 0, 1});
  REQUIRE(d.roots.size() == 1);
  CHECK(d.roots[0].multiplicity == 2);
  CHECK(d.counted() == 2);
  // s² − 3 t² has conjugate roots in F_{p²}.
  BinaryRoots q = binary_form_roots(F, Vec{F.neg(3), 0, 1});
  CHECK(q.roots.size() == 2);
  CHECK_FALSE(q.roots[0].rational());
  // t² (s − 2t)² as a quartic: double root at infinity.
  BinaryRoots inf = binary_form_roots(F, Vec{4, F.neg(4), 1, 0, 0});
  CHECK(inf.counted() == 4);
  bool has_inf = false;
  for (auto& x : inf.roots) has_inf |= x.at_infinity;
  CHECK(has_inf);
  CHECK_THROWS_AS(binary_form_roots(F, Vec{0, 0, 0}), Error);
  // Random products: every root found with correct multiplicity, residual for irreducible cubics.
  Rng rng(9, "roots");
  for (int trial = 0; trial < 30; ++trial) {
    upoly::Poly g{1};
    unsigned expect = 0;
    for (int k = 0; k < 3; ++k) {
      Elem a = rng.uniform(F);
      g = upoly::mul(F, g, upoly::Poly{F.neg(a), 1});
      ++expect;
    }
    g = upoly::mul(F, g, upoly::Poly{3, 0, 1});  // x² + 3: irreducible iff −3 non-residue
    BinaryRoots br = binary_form_roots(F, g);
    CHECK(br.counted() + br.residual == expect + 2);
    CHECK(br.residual == 0);
    for (auto& root : br.roots) {
      if (!root.rational()) continue;
      CHECK(upoly::eval(F, g, root.s.a) == 0);
    }
  }
}
