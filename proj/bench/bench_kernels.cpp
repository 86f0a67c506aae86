// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "glpkit/countermodel.hpp"
#include "glpkit/space.hpp"

using namespace glpkit;

namespace {

// Valid in J, so every frame of the given size is tried.
const Formula& valid_formula() {
  static const Formula f = parse_formula("[0]([0]p -> p) -> [0]p | <1>(q & ~<0>q)");
  return f;
}

void BM_CountermodelSerial(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  tree_frames(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(find_countermodel_serial(valid_formula(), n));
  state.counters["frames"] = static_cast<double>(tree_frames(n, 1).size());
}

void BM_CountermodelParallel(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  tree_frames(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(find_countermodel_parallel(valid_formula(), n));
  state.counters["frames"] = static_cast<double>(tree_frames(n, 1).size());
}

struct ProbeFixture {
  OrdSet a = parse_ordset("scaled(1, 2, w*3) | [w^2*2, w^2*2+w*4) | {w^2*5+7}", parse_ordinal("w^3"));
  OrdSet da = d1(a);
  std::vector<Ordinal> grid;
  explicit ProbeFixture(unsigned coef) : grid(probe_grid(coef)) {}
};

void BM_ProbeSerial(benchmark::State& state) {
  ProbeFixture fx(static_cast<unsigned>(state.range(0)));
  auto pred = [&](const Ordinal& x) { return member_d1(fx.a, x); };
  for (auto _ : state) benchmark::DoNotOptimize(probe_check_serial(fx.da, pred, fx.grid));
  state.counters["points"] = static_cast<double>(fx.grid.size());
}

void BM_ProbeParallel(benchmark::State& state) {
  ProbeFixture fx(static_cast<unsigned>(state.range(0)));
  auto pred = [&](const Ordinal& x) { return member_d1(fx.a, x); };
  for (auto _ : state) benchmark::DoNotOptimize(probe_check_parallel(fx.da, pred, fx.grid));
  state.counters["points"] = static_cast<double>(fx.grid.size());
}

}  // namespace

BENCHMARK(BM_CountermodelSerial)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountermodelParallel)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProbeSerial)->Arg(5)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProbeParallel)->Arg(5)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
