#include <benchmark/benchmark.h>

#include "syzkit/amoeba.hpp"
#include "syzkit/fibration.hpp"

using namespace syzkit;

namespace {

WeightedPointSet cubic_curve() {
  WeightedPointSet w = unweighted({{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {0, 3}});
  w.rho = {Rational(0), Rational(0), Rational(0), Rational(1), Rational(1), Rational(1), Rational(3), Rational(3)};
  return w;
}

AmoebaGrid grid(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  return {n, n, -3.0, 3.0};
}

void BM_AmoebaSerial(benchmark::State& state) {
  auto w = cubic_curve();
  auto g = grid(state);
  for (auto _ : state) benchmark::DoNotOptimize(amoeba_sample_serial(w, Rational(1, 16), g));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_AmoebaParallel(benchmark::State& state) {
  auto w = cubic_curve();
  auto g = grid(state);
  for (auto _ : state) benchmark::DoNotOptimize(amoeba_sample_parallel(w, Rational(1, 16), g));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_FiberSampleSerial(benchmark::State& state) {
  auto s = cn_minus_d(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_fiber_serial(s, FibrationKind::PiG, {0.5, 0.2, -0.3}, static_cast<std::size_t>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FiberSampleParallel(benchmark::State& state) {
  auto s = cn_minus_d(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_fiber_parallel(s, FibrationKind::PiG, {0.5, 0.2, -0.3}, static_cast<std::size_t>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ResidualSerial(benchmark::State& state) {
  auto s = milnor_unity(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(lagrangian_residual_serial(s, FibrationKind::PiL, {1.0, 0.3}, static_cast<std::size_t>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ResidualParallel(benchmark::State& state) {
  auto s = milnor_unity(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(lagrangian_residual_parallel(s, FibrationKind::PiL, {1.0, 0.3}, static_cast<std::size_t>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_AmoebaSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AmoebaParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FiberSampleSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FiberSampleParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ResidualSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ResidualParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
