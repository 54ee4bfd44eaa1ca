// Parallel vs serial dilatation sampling for the composed twist map.

#include <benchmark/benchmark.h>

#include "thompson/geometry.hpp"

using namespace thompson;

namespace {

TwistMapSpec spec() { return TwistMapSpec{20, CantorParams::omega_k(1), TwistKind::Composed}; }

void BM_DilatationParallel(benchmark::State& state) {
  auto s = spec();
  for (auto _ : state) benchmark::DoNotOptimize(twist_dilatation(s, state.range(0)).K);
}

void BM_DilatationSerial(benchmark::State& state) {
  auto s = spec();
  for (auto _ : state) benchmark::DoNotOptimize(twist_dilatation_serial(s, state.range(0)).K);
}

}  // namespace

BENCHMARK(BM_DilatationParallel)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DilatationSerial)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
