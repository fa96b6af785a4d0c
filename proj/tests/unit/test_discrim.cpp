#include "doctest.h"

#include "k3g16/discrim.hpp"
#include "k3g16/errors.hpp"
#include "k3g16/t1.hpp"
#include "unit/fixture.hpp"

using namespace k3g16;
using k3g16::testing::F101;
using k3g16::testing::stages;

TEST_CASE("determinant of the quadric net and its gradient") {
  const auto& st = stages();
  Rng rng(11, "test-disc");
  int nonzero = 0;
  for (int i = 0; i < 20; ++i) {
    const Vec u = rng.nonzero_vector(F101, 10);
    const DiscValue d = disc_value_and_grad(st.sys(), u);
    nonzero += d.value != 0;
    // Homogeneous of degree 10.
    const Elem c = rng.uniform(F101) | 1;
    CHECK(disc_value_and_grad(st.sys(), scale(F101, c, u)).value == F101.mul(F101.pow(c, 10), d.value));
    // Euler: u · grad = 10 det.
    CHECK(dot(F101, u, d.gradient) == F101.mul(10, d.value));
  }
  CHECK(nonzero >= 15);
  for (std::size_t i = 0; i < 5; ++i) {
    const X60Report x = x60_membership(st.sys(), st.syz, st.points[i], rng);
    CHECK(x.gram_rank == 9);
    CHECK(x.ok);
  }
}

TEST_CASE("rank 8 locus has degree 165") {
  Rng rng(11, "test-fit1");
  const SliceReport a = fit1_slice_degree(stages().sys(), rng);
  const SliceReport b = fit1_slice_degree(stages().sys(), rng);
  CHECK(a.interpolation_unique);
  CHECK(a.identity_checked);
  REQUIRE(a.hf.plateau);
  CHECK(a.hf.degree == 165);
  CHECK(b.hf.degree == a.hf.degree);
}

TEST_CASE("singular locus has slice degree 225") {
  Rng rng(11, "test-sing");
  const SliceReport a = sing_slice_degree(stages().sys(), rng);
  CHECK(a.identity_checked);
  REQUIRE(a.hf.plateau);
  CHECK(a.hf.degree == 225);
}

TEST_CASE("maximal minors of s' and its rank strata") {
  const auto& st = stages();
  Rng rng(11, "test-fit0");
  const auto pk = peskine_sample(st.t2, PeskineStrategy::secant, 6, rng);
  REQUIRE(pk.points.size() == 6);
  const Fit0Report r = fit0_sprime_checks(st.syz, pk.points, rng);
  CHECK(r.slice.hf.degree == 120);
  for (std::size_t rk : r.peskine_ranks) CHECK(rk == 6);
  CHECK(r.generic_rank8 == r.generic_points);
  REQUIRE(r.rank7_found);
  CHECK(rank(s_prime_at(st.syz, r.rank7_point)) == 7);
  CHECK(r.ok);
}

TEST_CASE("probes") {
  const auto& st = stages();
  Rng rng(11, "test-t1");
  const T1Run run = compute_t1(st.model, st.sys(), rng);
  Rng prng(11, "test-probes");
  const auto pk = peskine_sample(run.t1, PeskineStrategy::secant, 6, prng);
  const ProbeReport r = conjecture_probes(st.sys(), pk.points, st.points);
  CHECK_FALSE(r.skipped);
  CHECK(r.degree_arithmetic);
  for (std::size_t g : r.t1_peskine_gram_ranks) CHECK(g == 8);
  CHECK(r.chords == 10);
  // The ramification form vanishes identically along chords of X.
  for (std::size_t o : r.chord_endpoint_orders) CHECK(o == 11);
}
