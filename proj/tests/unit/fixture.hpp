#pragma once

#include "k3g16/mukai.hpp"
#include "k3g16/rng.hpp"
#include "k3g16/syzygy.hpp"
#include "k3g16/xquad.hpp"

namespace k3g16::testing {

inline const Field F101(101);

// One seed carried through the stages, built once per test binary.
struct Stages {
  Seed seed = generate_seed(101, 11);
  MukaiModel model{seed};
  V10Assembly v10;
  std::vector<XPoint> points;
  SyzygySpace syz;
  SymplecticPhi phi;
  Trivector t2;

  Stages() {
    Rng rng(11, "test-v10");
    v10 = assemble_v10(model, rng);
    Rng prng(11, "test-points");
    points = sample_x_points(model, v10.system, 20, prng).points;
    syz = linear_syzygies(v10.system);
    phi = phi_compute(v10.system, syz);
    t2 = t2_compute(v10.system, syz, phi).t2;
  }
  const QuadricSystem& sys() const { return v10.system; }
};

inline const Stages& stages() {
  static const Stages s;
  return s;
}

}  // namespace k3g16::testing
