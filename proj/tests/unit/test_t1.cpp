#include "doctest.h"

#include "k3g16/errors.hpp"
#include "k3g16/syzygy.hpp"
#include "k3g16/t1.hpp"
#include "k3g16/trivector.hpp"
#include "unit/fixture.hpp"

using namespace k3g16;
using k3g16::testing::F101;
using k3g16::testing::stages;

namespace {

const T1Run& t1_run() {
  static const T1Run run = [] {
    Rng rng(11, "test-t1");
    return compute_t1(stages().model, stages().sys(), rng);
  }();
  return run;
}

}  // namespace

TEST_CASE("K spaces of ruling pairs") {
  const auto& st = stages();
  const T1Run& run = t1_run();
  REQUIRE(run.k.size() == 10);
  for (std::size_t n = 0; n < 10; ++n) CHECK(run.k[n].dim() == 6);
  const auto& pairs = pair_list(5);
  for (std::size_t n = 0; n < 10; ++n) {
    const auto [i, j] = pairs[n];
    GlobalGenerationReport g = global_generation_check(st.sys(), run.rulings[i], run.rulings[j]);
    CHECK(g.image_dim == 4);
    CHECK(g.contained);
    for (std::size_t b = 0; b < 6; ++b) {
      MPoly q = st.sys().combination(run.k[n].vector(b));
      CHECK(q.evaluate(run.rulings[i].point) == 0);
      CHECK(q.evaluate(axpy(F101, 9, run.rulings[j].direction, run.rulings[j].point)) == 0);
    }
  }
}

TEST_CASE("algorithm dimensions") {
  const T1Run& run = t1_run();
  CHECK(run.delta.size() == 45);
  for (const Subspace& d : run.delta) CHECK(d.dim() == 2);
  CHECK(run.v35.dim() == 35);
  CHECK(run.n10.dim() == 10);
  CHECK(run.solution_dim == 1);
  CHECK(run.flattening_rank == 10);
  CHECK(run.flattening_onto_n10);
  CHECK(run.t1.variance() == Variance::dual);
  MESSAGE("attempts: " << run.attempts);
}

TEST_CASE("t1 vanishes on the K spaces and a sixth ruling") {
  const auto& st = stages();
  const T1Run& run = t1_run();
  Rng rng(3, "sixth");
  XPoint sixth = sample_x_points(st.model, st.sys(), 1, rng).points.front();
  Ruling extra = ruling_through(st.sys(), sixth);
  T1Verification v = verify_t1(st.sys(), run, &extra);
  CHECK(v.delta_in_congruence == 45);
  CHECK(v.k_nonzero_values == 0);
  CHECK(v.extra_k_spaces == 5);
  CHECK(v.extra_nonzero_values == 0);
  CHECK(v.ok);
}

TEST_CASE("t1 does not depend on the five points") {
  const auto& st = stages();
  Rng rng(4, "rerun");
  T1Run other = compute_t1(st.model, st.sys(), rng);
  CHECK(other.t1 == t1_run().t1);
}

TEST_CASE("orthogonality with t2") {
  const auto& st = stages();
  const Trivector& t1 = t1_run().t1;
  CHECK(compose(st.t2, t1).is_zero());
  Subspace perp = perp_space(st.t2);
  CHECK(perp.dim() == 20);
  CHECK(perp.contains(t1.coeffs()));
  CHECK(orbit_tangent_intersection(t1, perp) == 1);
}

TEST_CASE("Peskine locus of t1 and the pencil") {
  const auto& st = stages();
  const Trivector& t1 = t1_run().t1;
  Rng rng(5, "t1-slice");
  CHECK(peskine_slice_degree(t1, rng).hf.degree == 15);
  Subspace pen = pencil(st.sys(), st.v10.planes);
  REQUIRE(pen.dim() == 2);
  Secancy s = line_secancy(t1, pen);
  CHECK(s.degree == 4);
  MESSAGE("pencil congruence line of t1: " << is_congruence_line(t1, pen) << ", form rank " << s.form_rank);
}
