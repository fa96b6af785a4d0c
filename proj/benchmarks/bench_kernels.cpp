#include <benchmark/benchmark.h>

#include "k3g16/linalg.hpp"
#include "k3g16/mpoly.hpp"
#include "k3g16/mukai.hpp"
#include "k3g16/rng.hpp"
#include "k3g16/syzygy.hpp"
#include "k3g16/trivector.hpp"
#include "k3g16/xquad.hpp"

using namespace k3g16;

namespace {

const Field F(101);

struct Model {
  Seed seed = generate_seed(101, 11);
  MukaiModel model{seed};
  QuadricSystem sys;
  Trivector t2;
  Model() {
    Rng rng(11, "bench-v10");
    sys = assemble_v10(model, rng).system;
    const SyzygySpace syz = linear_syzygies(sys);
    t2 = t2_compute(sys, syz, phi_compute(sys, syz)).t2;
  }
};

const Model& model() {
  static const Model m;
  return m;
}

void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1, "bench-rank");
  const FqMatrix m = rng.matrix(F, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(55)->Arg(220)->Arg(715);

void BM_Adjugate10(benchmark::State& state) {
  Rng rng(1, "bench-adj");
  const FqMatrix m = rng.matrix(F, 10, 10);
  for (auto _ : state) benchmark::DoNotOptimize(adjugate(m));
}
BENCHMARK(BM_Adjugate10);

void BM_RowReducer(benchmark::State& state) {
  Rng rng(1, "bench-reducer");
  const FqMatrix m = rng.matrix(F, 600, 500);
  for (auto _ : state) {
    RowReducer r(F, 500);
    r.insert_block(m);
    benchmark::DoNotOptimize(r.rank());
  }
}
BENCHMARK(BM_RowReducer);

void BM_GenerateSeed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(generate_seed(101, 11));
}
BENCHMARK(BM_GenerateSeed)->Unit(benchmark::kMillisecond);

void BM_CubicIdeal(benchmark::State& state) {
  const auto gens = model().sys.quadrics();
  for (auto _ : state) benchmark::DoNotOptimize(homogeneous_ideal_dim_exact(gens, 3));
}
BENCHMARK(BM_CubicIdeal)->Unit(benchmark::kMillisecond);

void BM_PeskineTest(benchmark::State& state) {
  Rng rng(1, "bench-peskine");
  const Vec v = rng.vector(F, 10);
  for (auto _ : state) benchmark::DoNotOptimize(peskine_test(model().t2, v).rank);
}
BENCHMARK(BM_PeskineTest);

void BM_Interpolate(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  Rng rng(1, "bench-interp");
  const Vec l = rng.vector(F, 4);
  std::vector<Vec> pts;
  Vec vals;
  for (std::size_t i = 0; i < monomial_count(4, d) + 10; ++i) {
    pts.push_back(rng.vector(F, 4));
    vals.push_back(F.pow(dot(F, l, pts.back()), d));
  }
  for (auto _ : state) benchmark::DoNotOptimize(interpolate(F, 4, d, pts, vals).form);
}
BENCHMARK(BM_Interpolate)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
