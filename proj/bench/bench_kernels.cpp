#include <benchmark/benchmark.h>

#include <vector>

#include "polars/kernels.hpp"
#include "polars/rng.hpp"

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  polars::SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

std::vector<polars::SampleVector> models(std::size_t count, std::size_t n) {
  std::vector<polars::SampleVector> out;
  for (std::size_t m = 0; m < count; ++m) {
    out.emplace_back("m" + std::to_string(m), noise(n, 100 + m));
  }
  return out;
}

void BM_JointHistogram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n, 1), y = noise(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polars::kernels::joint_histogram(x, y, 64));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_JointHistogramSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n, 1), y = noise(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polars::kernels::joint_histogram_serial(x, y, 64));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_InfoBatch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = noise(n, 1);
  const auto ms = models(20, n);
  for (auto _ : state) benchmark::DoNotOptimize(polars::kernels::info_batch(ref, ms, {}));
}

void BM_InfoBatchSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = noise(n, 1);
  const auto ms = models(20, n);
  for (auto _ : state) benchmark::DoNotOptimize(polars::kernels::info_batch_serial(ref, ms, {}));
}

void BM_TaylorBatch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = noise(n, 1);
  const auto ms = models(20, n);
  for (auto _ : state) benchmark::DoNotOptimize(polars::kernels::taylor_batch(ref, ms));
}

void BM_TaylorBatchSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ref = noise(n, 1);
  const auto ms = models(20, n);
  for (auto _ : state) benchmark::DoNotOptimize(polars::kernels::taylor_batch_serial(ref, ms));
}

}  // namespace

BENCHMARK(BM_JointHistogram)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_JointHistogramSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_InfoBatch)->Arg(312)->Arg(1 << 16);
BENCHMARK(BM_InfoBatchSerial)->Arg(312)->Arg(1 << 16);
BENCHMARK(BM_TaylorBatch)->Arg(312)->Arg(1 << 16);
BENCHMARK(BM_TaylorBatchSerial)->Arg(312)->Arg(1 << 16);

BENCHMARK_MAIN();
