#include "doctest.h"

#include "k3g16/errors.hpp"
#include "k3g16/syzygy.hpp"
#include "unit/fixture.hpp"

using namespace k3g16;
using k3g16::testing::F101;
using k3g16::testing::stages;

TEST_CASE("linear syzygies") {
  const auto& st = stages();
  CHECK(st.syz.dim() == 8);
  // Each syzygy multiplies out to the zero cubic.
  const auto quads = st.sys().quadrics();
  for (std::size_t a = 0; a < 8; ++a) {
    MPoly sum(F101, 10, 3);
    for (std::size_t i = 0; i < 10; ++i) {
      Vec lin(10);
      for (std::size_t k = 0; k < 10; ++k) lin[k] = st.syz.sigma(a, i, k);
      sum = sum + quads[i] * MPoly::linear(F101, lin);
    }
    CHECK(sum.is_zero());
  }
  Rng rng(1, "s-rank");
  for (int i = 0; i < 20; ++i) CHECK(rank(st.syz.s_at(rng.vector(F101, 10))) == 8);
  CHECK(st.syz.s_at(Vec(10, 0)).is_zero());
  for (const XPoint& p : st.points) CHECK(rank(st.syz.s_at(p.coords)) == 4);
}

TEST_CASE("degree-3 ideal dimension") {
  const auto& st = stages();
  CHECK(homogeneous_ideal_dim_exact(st.sys().quadrics(), 3) == 92);
}

TEST_CASE("vertex fibers") {
  const auto& st = stages();
  Rng rng(2, "fiber");
  for (std::size_t n = 0; n < 10; ++n) {
    const XPoint& p = st.points[n];
    Subspace fib = vertex_fiber(st.sys(), st.syz, p.coords);
    CHECK(fib.dim() == 4);
    Ruling l = ruling_through(st.sys(), p);
    // The kernel of s_γ in V₈ is pulled back from the surface; the image in V₁₀ moves with the twist.
    Vec other = axpy(F101, 5, l.direction, l.point);
    const Subspace k0 = kernel(st.syz.s_at(p.coords));
    CHECK(kernel(st.syz.s_at(other)) == k0);
    CHECK(kernel(st.syz.s_at(l.direction)) == k0);
    CHECK(span_union(fib, vertex_fiber(st.sys(), st.syz, l.direction)).dim() == 8);
    std::size_t max_rank = 0;
    for (int k = 0; k < 5; ++k) {
      Vec u = fib.basis().apply_left(rng.nonzero_vector(F101, 4));
      std::size_t r = rank(st.sys().gram_combination(u));
      CHECK(r <= 9);
      max_rank = std::max(max_rank, r);
    }
    CHECK(max_rank == 9);
  }
}

TEST_CASE("phi is a skew isomorphism with isotropic fibers") {
  const auto& st = stages();
  CHECK(st.phi.kernel_dim == 1);
  CHECK(st.phi.phi.is_skew());
  CHECK(st.phi.rank == 8);
  for (std::size_t n = 0; n < 10; ++n) CHECK(phi_isotropic_at(st.phi, st.syz, st.points[n].coords));
  Rng rng(4, "phi-generic");
  CHECK(!phi_isotropic_at(st.phi, st.syz, rng.vector(F101, 10)));
}

TEST_CASE("t2 trivector") {
  const auto& st = stages();
  CHECK(!st.t2.is_zero());
  CHECK(rank(st.t2.flattening()) == 10);
  CHECK(kernel(st.t2.flattening()).dim() == 35);
  Rng rng(5, "t2-contract");
  for (int i = 0; i < 5; ++i) {
    Vec v = st.sys().values(rng.vector(F101, 10));
    CHECK(st.t2.evaluate(v, v, rng.vector(F101, 10)) == 0);
  }
}

TEST_CASE("quadratic syzygies come from the t2 flattening") {
  const auto& st = stages();
  QuadraticSyzygyReport r = quadratic_syzygy_check(st.sys(), st.syz, st.t2);
  CHECK(r.kernel_dim == 10);
  CHECK(r.image_dim == 35);
  CHECK(r.kernel_is_flattening);
  CHECK(r.ok);
}

TEST_CASE("t2 vanishes on the six-dimensional orthogonals") {
  const auto& st = stages();
  for (std::size_t n = 0; n < 10; ++n) {
    SixPlaneReport r = dv_sixplane_check(st.t2, vertex_fiber(st.sys(), st.syz, st.points[n].coords));
    CHECK(r.orthogonal_dim == 6);
    CHECK(r.nonzero_values == 0);
  }
  Rng rng(6, "random-fiber");
  Subspace random4 = Subspace::spanned_by(rng.matrix(F101, 4, 10));
  CHECK(dv_sixplane_check(st.t2, random4).nonzero_values > 0);
}

TEST_CASE("quadrics restricted to the span of two rulings") {
  const auto& st = stages();
  for (std::size_t n = 0; n + 1 < 20; n += 2) {
    Ruling a = ruling_through(st.sys(), st.points[n]);
    Ruling b = ruling_through(st.sys(), st.points[n + 1]);
    GlobalGenerationReport r = global_generation_check(st.sys(), a, b);
    CHECK(r.span_dim == 4);
    CHECK(r.through_lines_dim == 4);
    CHECK(r.contained);
    CHECK(r.image_dim == 4);
  }
}
