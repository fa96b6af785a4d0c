#include <chrono>
#include <set>

#include "doctest.h"

#include "k3g16/errors.hpp"
#include "k3g16/mukai.hpp"
#include "k3g16/rng.hpp"
#include "k3g16/xquad.hpp"

using namespace k3g16;

namespace {

const Field F(101);

struct Fixture {
  Seed seed = generate_seed(101, 11);
  MukaiModel model{seed};
  V10Assembly v10;
  std::vector<XPoint> points;
  Fixture() {
    Rng rng(11, "test-v10");
    v10 = assemble_v10(model, rng);
    Rng prng(11, "test-points");
    points = sample_x_points(model, v10.system, 20, prng).points;
  }
};

const Fixture& fixture() {
  static const Fixture fx;
  return fx;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("each plane gives a 4-dim space and six planes span 10") {
  const Fixture& fx = fixture();
  for (const auto& pq : fx.v10.planes) CHECK(pq.quadrics.dim() == 4);
  CHECK(fx.v10.system.dim() == 10);
  CHECK(fx.v10.extra_planes == 4);
  CHECK(fx.v10.growth.back() == 10);
  CHECK(fx.v10.planes_needed >= 3);
  CHECK(fx.v10.planes_needed <= 6);
  MESSAGE("planes needed: " << fx.v10.planes_needed);
}

TEST_CASE("V10 does not depend on the plane set") {
  const Fixture& fx = fixture();
  Rng rng(99, "other-planes");
  V10Assembly other = assemble_v10(fx.model, rng, 6, 12, 0);
  CHECK(other.system.space() == fx.v10.system.space());
}

TEST_CASE("gram matrices are symmetric and reproduce the quadrics") {
  const Fixture& fx = fixture();
  Rng rng(3, "gram");
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(fx.v10.system.gram(i).is_symmetric());
    Vec w = rng.vector(F, 10);
    Elem direct = fx.v10.system.quadric(i).evaluate(w);
    CHECK(dot(F, w, fx.v10.system.gram(i).apply(w)) == direct);
  }
}

TEST_CASE("sampled X points lie on every quadric and are smooth") {
  const Fixture& fx = fixture();
  REQUIRE(fx.points.size() == 20);
  for (const XPoint& p : fx.points) {
    CHECK(fx.v10.system.vanishes_at(p.coords));
    CHECK(rank(fx.v10.system.jacobian(p.coords)) == 6);
    CHECK(fx.model.t_fiber(p.source_x).contains(p.coords));
  }
}

TEST_CASE("fiber planes meet X in four points over the closure") {
  const Fixture& fx = fixture();
  Rng rng(5, "closure");
  std::size_t rational = 0;
  const int trials = 10;
  for (int i = 0; i < trials; ++i) {
    Vec x = rng.nonzero_vector(F, 4);
    auto pts = x_points_in_plane(fx.model, fx.v10.system, x);
    CHECK(pts.size() <= 4);
    rational += pts.size();
    CHECK(x_points_closure_count(fx.model, fx.v10.system, x, rng) == 4);
  }
  MESSAGE("rational X points per plane: " << double(rational) / trials);
}

TEST_CASE("a unique ruling passes through each sampled point") {
  const Fixture& fx = fixture();
  std::set<Vec> directions;
  for (const XPoint& p : fx.points) {
    Ruling l = ruling_through(fx.v10.system, p);
    CHECK(!proportional(F, l.point, l.direction));
    CHECK(fx.v10.system.vanishes_at(l.direction));
    Vec mid = axpy(F, 7, l.direction, l.point);
    CHECK(fx.v10.system.vanishes_at(mid));
    CHECK(l.span(F).dim() == 2);
  }
  // Two points from one plane lie on different rulings.
  for (std::size_t i = 0; i + 1 < fx.points.size(); ++i) {
    const XPoint& a = fx.points[i];
    const XPoint& b = fx.points[i + 1];
    if (a.source_x != b.source_x) continue;
    CHECK(!(ruling_through(fx.v10.system, a).span(F) == ruling_through(fx.v10.system, b).span(F)));
  }
}

TEST_CASE("pencil from plane intersections") {
  const Fixture& fx = fixture();
  std::vector<PlaneQuadrics> three(fx.v10.planes.begin(), fx.v10.planes.begin() + 3);
  Subspace pen = pencil(fx.v10.system, three);
  CHECK(pen.dim() == 2);
  CHECK(pencil(fx.v10.system, fx.v10.planes) == pen);
  Rng rng(8, "pencil");
  for (int i = 0; i < 20; ++i) {
    Vec u = pen.basis().apply_left(rng.nonzero_vector(F, 2));
    CHECK(rank(fx.v10.system.gram_combination(u)) == 8);
  }
  PlaneQuadrics fresh = plane_quadrics(fx.model, rng.matrix(F, 3, 4), rng);
  CHECK(pencil(fx.v10.system, {fresh}).contains(pen));
}

TEST_CASE("Hilbert function matches the combination of binomials") {
  CHECK(hilbert_combination(2) == 45);
  CHECK(hilbert_combination(3) == 128);
  CHECK(hilbert_combination(6) == 875);
  const Fixture& fx = fixture();
  Rng rng(2, "hilbert");
  auto t0 = std::chrono::steady_clock::now();
  HilbertReport r = hilbert_check(fx.v10.system, 6, rng);
  MESSAGE("hilbert m<=6: " << seconds_since(t0) << " s");
  CHECK(r.values == std::vector<std::size_t>{45, 128, 280, 522, 875});
  CHECK(r.ideal_dims[1] == 92);
  CHECK(r.third_difference == 21);
  CHECK(r.ok);
}

TEST_CASE("Pluecker model of the ruling space") {
  const Fixture& fx = fixture();
  Rng rng(4, "plucker");
  std::vector<Ruling> rulings;
  XSample s = sample_x_points(fx.model, fx.v10.system, 40, rng);
  for (const XPoint& p : s.points) rulings.push_back(ruling_through(fx.v10.system, p));
  auto t0 = std::chrono::steady_clock::now();
  PluckerReport r = plucker_model(F, rulings, rng);
  MESSAGE("plucker: " << seconds_since(t0) << " s");
  CHECK(r.span_dim == 17);
  CHECK(r.annihilator_dim == 28);
  CHECK(r.pfaffian_span == 91);
  CHECK(r.hilbert == std::vector<std::size_t>{17, 62, 137, 242});
  CHECK(r.ok);
}
