#include <benchmark/benchmark.h>

#include "stableop/solver.hpp"
#include "stableop/spectral.hpp"
#include "stableop/stable_operator.hpp"

using namespace stableop;

static void BM_ApplyPointwise(benchmark::State& state) {
  StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
  SampledFunction u = bump_function(Vec(0.0), 0.8, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_pointwise(op, u, Vec(0.3)));
}
BENCHMARK(BM_ApplyPointwise);

static void BM_Assemble(benchmark::State& state) {
  StableOperator op(0.5, SpectralMeasure::uniform(1, 1.0));
  Mesh1D mesh = Mesh1D::graded(-1.0, 1.0, static_cast<int>(state.range(0)));
  auto f = [](double) { return 1.0; };
  for (auto _ : state) benchmark::DoNotOptimize(assemble(op, mesh, f));
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(32)->Arg(64);

static void BM_TailWeight(benchmark::State& state) {
  Domain dom = Domain::interval(-1.0, 1.0);
  TailWeight tw(LevyMeasure(SpectralMeasure::uniform(1, 1.0), 0.5), dom);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tw(Vec(x)));
    x = x > 20 ? 0.0 : x + 0.37;
  }
}
BENCHMARK(BM_TailWeight);

BENCHMARK_MAIN();
