#include <benchmark/benchmark.h>

#include "lppsim/distributions.hpp"
#include "lppsim/lpp.hpp"
#include "lppsim/polymer.hpp"
#include "lppsim/rng.hpp"

using namespace lppsim;

static void BM_RngNextUnit(benchmark::State& state) {
  RngStream stream(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.next_unit());
  }
}
BENCHMARK(BM_RngNextUnit);

static void BM_RngRandomAccess(benchmark::State& state) {
  const RngStream stream(1, 0);
  std::uint64_t c = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.unit_at(c += 0x9e37));
  }
}
BENCHMARK(BM_RngRandomAccess);

static void BM_ExpQuantile(benchmark::State& state) {
  RngStream stream(2, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exp_quantile(stream.next_unit(), 0.5));
  }
}
BENCHMARK(BM_ExpQuantile);

static void BM_InvGammaQuantile(benchmark::State& state) {
  RngStream stream(3, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(invgamma_quantile(stream.next_unit(), 0.5));
  }
}
BENCHMARK(BM_InvGammaQuantile);

static void BM_LogSumExp2(benchmark::State& state) {
  double a = 0.25, b = -0.5;
  for (auto _ : state) {
    a = logsumexp2(a, b) - 0.7;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_LogSumExp2);

static void BM_LppPassageField(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto env =
      sample_environment(n, n, WeightDistribution::exponential(1.0), RngStream(4, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bulk_passage_field(env, {0, 0}));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_LppPassageField)->Range(64, 512);

static void BM_PolymerLogPartitionRow(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto env =
      sample_environment(n, n, WeightDistribution::inverse_gamma(1.0), RngStream(5, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bulk_log_partition_row(env, {0, 0}, n - 1, n - 1));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_PolymerLogPartitionRow)->Range(64, 512);

static void BM_QuenchedEntryDistribution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto env =
      sample_environment(n + 1, n + 1, WeightDistribution::inverse_gamma(1.0), RngStream(6, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quenched_row_entry_distribution(env, {0, 0}, {n, n}, n / 2));
  }
}
BENCHMARK(BM_QuenchedEntryDistribution)->Range(32, 256);

BENCHMARK_MAIN();
