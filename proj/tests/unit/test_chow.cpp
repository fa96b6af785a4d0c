#include "doctest.h"

#include "k3g16/chow.hpp"

using namespace k3g16::chow;
using B = PFClass::Basis;

TEST_CASE("ring relations") {
  const PFClass H = PFClass::basis(B::H);
  const PFClass h = PFClass::basis(B::h);
  CHECK(ring_consistent());
  CHECK(H * H == PFClass::basis(B::hH) + PFClass::basis(B::p, -9));
  CHECK(h * h == PFClass::basis(B::p, 30));
  CHECK((h * PFClass::basis(B::p)) == PFClass());
  CHECK((PFClass::basis(B::p) * PFClass::basis(B::p)) == PFClass());
  const PFClass u = PFClass::basis(B::one) + H.scaled(3) - h + PFClass::basis(B::p, 5);
  CHECK(u * u.inverse() == PFClass::basis(B::one));
  CHECK(u.to_string() == "1 + 3H - h + 5p");
}

TEST_CASE("Segre class of the normal bundle") {
  const SegreReport r = segre_normal_check();
  CHECK(r.segre.graded(1) == PFClass::basis(B::H, -8) + PFClass::basis(B::h, -1));
  CHECK(r.segre.graded(2) == PFClass::basis(B::hH, 45) + PFClass::basis(B::p, -291));
  CHECK(r.segre.degree() == -4152);
  CHECK(r.product_top == 510);
  CHECK(r.cover_degree == 2);
  CHECK(r.ok);
}

TEST_CASE("degree of the scroll") {
  const DegreeXReport r = degree_x();
  CHECK(r.h3 == 21);
  CHECK(r.hH2 == 30);
  CHECK(r.ok);
  const auto d = third_differences({45, 128, 280, 522, 875});
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 21);
  CHECK(d[1] == 21);
}

TEST_CASE("Chern classes of T") {
  const ChernTReport r = chern_t_check();
  CHECK(r.c == std::array<std::int64_t, 4>{1, 5, 12, 12});
  CHECK(r.ok);
}

TEST_CASE("Fujiki arithmetic and the stability case analysis") {
  using C = HKLattice::Class;
  CHECK(HKLattice::q({2, -7}, {2, -7}) == 22);
  CHECK(HKLattice::top(C{1, 0}) == 3 * 900);
  const StabilityReport r = stability_check();
  CHECK(r.c1_4 == 1452);
  CHECK(r.three_quarters == 1089);
  CHECK(r.l_c1_3 == 3960);
  CHECK(r.delta_c1_3 == 924);
  // 1089 / 495
  CHECK(r.bound_num * 5 == r.bound_den * 11);
  REQUIRE(r.cases.size() == 2);
  CHECK(r.cases[0].beta_min == 4);
  CHECK(r.cases[1].beta_min == 8);
  CHECK(r.ok);
  CHECK(r.verdict == "no destabilizing movable class");
}
