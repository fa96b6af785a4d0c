#include <chrono>

#include "doctest.h"

#include "k3g16/errors.hpp"
#include "k3g16/trivector.hpp"
#include "unit/fixture.hpp"

using namespace k3g16;
using k3g16::testing::F101;
using k3g16::testing::stages;

namespace {

Trivector random_trivector(Rng& rng, Variance v = Variance::primal) {
  return Trivector::from_coeffs(F101, 10, rng.vector(F101, 120), v);
}

FqMatrix random_skew(Rng& rng, std::size_t n) {
  FqMatrix a(F101, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = rng.uniform(F101);
      a(j, i) = F101.neg(a(i, j));
    }
  return a;
}

}  // namespace

TEST_CASE("pfaffians") {
  Rng rng(1, "pf");
  FqMatrix a = random_skew(rng, 4);
  Elem expect = F101.add(F101.sub(F101.mul(a(0, 1), a(2, 3)), F101.mul(a(0, 2), a(1, 3))), F101.mul(a(0, 3), a(1, 2)));
  CHECK(pfaffian(a) == expect);
  for (std::size_t n : {2u, 6u, 8u}) {
    FqMatrix b = random_skew(rng, n);
    Elem pf = pfaffian(b);
    CHECK(F101.mul(pf, pf) == det(b));
  }
  CHECK(pfaffian(random_skew(rng, 5)) == 0);
  CHECK(sub_pfaffians(random_skew(rng, 10)).size() == 45);
}

TEST_CASE("contractions and congruence lines of a random trivector") {
  Rng rng(2, "random-t");
  Trivector t = random_trivector(rng);
  for (int i = 0; i < 10; ++i) {
    Vec q = rng.nonzero_vector(F101, 10);
    PeskineTest pt = peskine_test(t, q);
    CHECK(pt.rank == 8);
    CHECK(!pt.kernel);
    Subspace line = congruence_line_through(t, q);
    CHECK(line.dim() == 2);
    CHECK(line.contains(q));
    CHECK(is_congruence_line(t, line));
    Secancy s = line_secancy(t, line);
    CHECK(s.degree == 4);
    CHECK(s.form_rank >= 1);
    for (const Vec& v : s.rational_points) {
      PeskineTest at = peskine_test(t, v);
      CHECK(at.rank <= 6);
      REQUIRE(at.kernel);
      CHECK(at.kernel->dim() == 4);
      CHECK(at.kernel->contains(v));
    }
  }
  // A random line is not secant in the same way: the sub-Pfaffians share no factor.
  Secancy s = line_secancy(t, rng.vector(F101, 10), rng.vector(F101, 10));
  CHECK(s.degree == 0);
  CHECK(s.form_rank > 1);
}

TEST_CASE("rank of contractions is even") {
  Rng rng(3, "even");
  Trivector t = random_trivector(rng);
  FqMatrix slice = rng.matrix(F101, 2, 10);
  for (int i = 0; i < 50; ++i) {
    Vec v = slice.apply_left(rng.vector(F101, 2));
    if (is_zero(v)) continue;
    CHECK(peskine_test(t, v).rank % 2 == 0);
  }
}

TEST_CASE("Peskine slice degree is 15") {
  const auto& st = stages();
  Rng rng(4, "slice");
  SliceDegree a = peskine_slice_degree(st.t2, rng);
  SliceDegree b = peskine_slice_degree(st.t2, rng);
  CHECK(a.interpolation_unique);
  CHECK(a.hf.plateau);
  CHECK(a.hf.degree == 15);
  CHECK(b.hf.degree == 15);
  Rng trng(5, "random-slice");
  Trivector t = random_trivector(trng);
  CHECK(peskine_slice_degree(t, trng).hf.degree == 15);
  // Invariant under a change of coordinates.
  FqMatrix g = trng.matrix(F101, 10, 10);
  REQUIRE(rank(g) == 10);
  CHECK(peskine_slice_degree(t.pulled_back(g), trng).hf.degree == 15);
}

TEST_CASE("sampling Peskine points") {
  const auto& st = stages();
  Rng rng(6, "sample");
  auto t0 = std::chrono::steady_clock::now();
  FqMatrix slice = rng.matrix(F101, 4, 10);
  std::vector<PeskinePoint> pts = peskine_points_on_slice(st.t2, slice);
  MESSAGE("slice enumeration: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
                                << " s, " << pts.size() << " rational points");
  CHECK(pts.size() <= 15);
  for (const PeskinePoint& p : pts) {
    CHECK(peskine_test(st.t2, p.coords).rank <= 6);
    CHECK(p.kernel4.dim() == 4);
  }
  PeskineSample sec = peskine_sample(st.t2, PeskineStrategy::secant, 5, rng);
  CHECK(sec.points.size() == 5);
  for (const PeskinePoint& p : sec.points) CHECK(p.kernel4.contains(p.coords));
}

TEST_CASE("compose and perpendicular spaces") {
  Rng rng(7, "perp");
  Trivector zero(F101, 10, Variance::dual);
  Trivector b = random_trivector(rng);
  CHECK(compose(b, zero).is_zero());
  for (int i = 0; i < 5; ++i) {
    Trivector a = random_trivector(rng, Variance::dual);
    CHECK(det(compose(random_trivector(rng), a)) != 0);
  }
  CHECK(perp_space(Trivector(F101, 10)).dim() == 120);
  const auto& st = stages();
  Subspace perp = perp_space(st.t2);
  CHECK(perp.dim() == 20);
  CHECK(perp.contains(Vec(120, 0)));
}

TEST_CASE("orbit tangent contains the trivector") {
  Rng rng(8, "orbit");
  Trivector t = random_trivector(rng, Variance::dual);
  Subspace tan = orbit_tangent(t);
  CHECK(tan.contains(t.coeffs()));
  CHECK(tan.dim() == 100);
}
