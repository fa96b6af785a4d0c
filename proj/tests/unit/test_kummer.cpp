#include "doctest.h"

#include "k3g16/errors.hpp"
#include "k3g16/kummer.hpp"
#include "unit/fixture.hpp"

using namespace k3g16;
using k3g16::testing::F101;
using k3g16::testing::stages;

namespace {

// A frame whose six points include at least two rational ones.
const SixSecantFrame& rich_frame() {
  static const SixSecantFrame fr = [] {
    Rng rng(11, "test-frame");
    for (int i = 0; i < 60; ++i) {
      const auto pk = peskine_sample(stages().t2, PeskineStrategy::secant, 1, rng);
      if (pk.points.empty()) continue;
      SixSecantFrame f = six_secant_frame(stages().sys(), stages().syz, pk.points[0], rng);
      if (f.z6.size() >= 2) return f;
    }
    fail(ErrorCode::internal, "no frame with two rational base points");
  }();
  return fr;
}

}  // namespace

TEST_CASE("six secant frame") {
  const SixSecantFrame& fr = rich_frame();
  CHECK(fr.pq.dim() == 4);
  CHECK(fr.z6_closure == 6);
  CHECK(fr.restriction_kernel.dim() == 6);
  CHECK(fr.annihilator_ok);
  CHECK(fr.image_ok);
  CHECK(fr.fiber_degree == 8);
  for (const Vec& z : fr.z6) CHECK(stages().sys().vanishes_at(fr.embed.apply(z)));
  // The restricted quadrics are the target coordinates.
  Rng rng(11, "test-frame-map");
  for (int i = 0; i < 5; ++i) {
    const Vec y = rng.nonzero_vector(F101, 4);
    CHECK(fr.map(y) == fr.target_coords(stages().sys().values(fr.embed.apply(y))));
  }
}

TEST_CASE("frame rejects points off the Peskine locus") {
  Rng rng(11, "test-frame-reject");
  const Vec v = rng.nonzero_vector(F101, 10);
  PeskinePoint fake{v, Subspace::zero(F101, 10)};
  CHECK_THROWS_AS(six_secant_frame(stages().sys(), stages().syz, fake, rng), Error);
}

TEST_CASE("Weddle quartic is nodal at the six points") {
  Rng rng(11, "test-weddle");
  const WeddleReport w = weddle(rich_frame(), rng);
  CHECK_FALSE(w.quartic.is_zero());
  CHECK(w.quartic.degree() == 4);
  CHECK(w.rational_nodes_checked >= 2);
  CHECK(w.closure_degree == 6);
  CHECK(w.nodes_ok);
}

TEST_CASE("Kummer quartic") {
  Rng rng(11, "test-kummer");
  const SixSecantFrame& fr = rich_frame();
  const KummerReport k = kummer_quartic(fr, weddle(fr, rng), rng);
  CHECK(k.solution_dim == 1);
  CHECK(k.lambda != 0);
  CHECK(k.identity_ok);
  CHECK(k.node_at_q);
  CHECK(k.bisecant_images >= 1);
  CHECK(k.bisecants_singular);
  CHECK(k.rational_singular.size() >= 1 + k.bisecant_images);
  CHECK(k.rational_singular.size() <= 16);
  REQUIRE(k.singular_closure.plateau);
  CHECK(k.singular_closure.degree == 16);
  CHECK(k.ok);
}

TEST_CASE("cubic surface of the Peskine points") {
  Rng rng(11, "test-cubic");
  const CubicSurfaceReport c = cubic_surface(rich_frame(), stages().t2, rng);
  CHECK(c.points > 100);
  CHECK(c.solution_dim == 1);
  CHECK(c.q_off_cubic);
  CHECK(c.smooth_checked == 20);
  CHECK(c.ok);
}

TEST_CASE("tangent decomposition") {
  Rng rng(11, "test-tangent");
  const TangentDecomposition t = tangent_decomposition(stages().sys(), stages().syz, stages().t2, rng);
  REQUIRE_FALSE(t.skipped);
  CHECK(t.secant_points.size() == 4);
  CHECK(t.line_in_all);
  CHECK(t.sum_dim == 8);
  for (bool b : t.on_kummer) CHECK(b);
  CHECK(t.ok);
}
