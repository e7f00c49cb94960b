// Serial reference vs OpenMP kernels.
//   ./bench_kernels --benchmark_filter=Oracle
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "vigilance/best_response.hpp"
#include "vigilance/channel.hpp"
#include "vigilance/flow.hpp"
#include "vigilance/kernels.hpp"

using namespace vigilance;

namespace {

const GameConfig kCfg = GameConfig::OneOnOne(10, 10.0, 0.01);

double Cost(double g) {
  return UtilityG(g, 0.6 * ComputeFairBaselines(kCfg).c, 10.0, kCfg);
}

void BM_OracleSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(OracleArgminSerial(Cost, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OracleParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(OracleArgmin(Cost, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FieldSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SampleFieldSerial(n, kCfg));
}

void BM_FieldParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SampleField(n, kCfg));
}

void FixedPoints(benchmark::State& state, bool parallel) {
  FixedPointOptions opts;
  opts.parallel = parallel;
  opts.basin_grid = 5;
  opts.basin_steps = 4000;
  for (auto _ : state) benchmark::DoNotOptimize(FindFixedPoints(kCfg, opts));
}

void BM_FixedPointsSerial(benchmark::State& state) { FixedPoints(state, false); }
void BM_FixedPointsParallel(benchmark::State& state) { FixedPoints(state, true); }

void BM_ChannelBatch(benchmark::State& state) {
  const std::vector<double> q(10, 0.1);
  std::vector<std::uint64_t> seeds(8);
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i + 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SimulateBatch(q, 100000, seeds));
  }
  state.SetItemsProcessed(state.iterations() * 800000);
}

}  // namespace

BENCHMARK(BM_OracleSerial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldSerial)->Arg(21)->Arg(201)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FieldParallel)->Arg(21)->Arg(201)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FixedPointsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FixedPointsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChannelBatch)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
