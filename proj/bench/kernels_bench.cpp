// Serial reference vs OpenMP kernels on an inverse-Wishart correlation
// posterior. The thread count is the benchmark argument; the serial versions
// ignore it.

#include "credrect/coverage.hpp"
#include "credrect/serial.hpp"
#include "credrect/simulation.hpp"
#include "credrect/sliced_grid.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

namespace credrect {
namespace {

constexpr std::size_t kDim = 20;

const CorrelationPosteriorSource& source() {
  static const CorrelationPosteriorSource src(make_equicorrelation(kDim, 0.4), 72.0);
  return src;
}

DrawPlan plan(std::size_t total) { return DrawPlan{1, StreamDomain::Estimation, total, 4096}; }

const std::vector<double>& levels() {
  static const std::vector<double> g = log_spaced_grid(0.05, kDim * (kDim - 1) / 2, 16);
  return g;
}

const MarginalQuantileTable& table() {
  static const MarginalQuantileTable t = serial::estimate_marginal_quantiles(source(), levels(), plan(200000));
  return t;
}

void BM_DrawSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::draw_all(source(), plan(50000)));
  state.SetItemsProcessed(state.iterations() * 50000);
}

void BM_DrawParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(draw_all(source(), plan(50000)));
  state.SetItemsProcessed(state.iterations() * 50000);
}

void BM_QuantilesSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::estimate_marginal_quantiles(source(), levels(), plan(200000)));
  state.SetItemsProcessed(state.iterations() * 200000);
}

void BM_QuantilesParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_marginal_quantiles(source(), levels(), plan(200000)));
  state.SetItemsProcessed(state.iterations() * 200000);
}

void BM_CoverageSerial(benchmark::State& state) {
  const DrawPlan val{2, StreamDomain::Validation, 50000, 4096};
  for (auto _ : state) benchmark::DoNotOptimize(serial::nested_coverage_counts(table(), source(), val));
  state.SetItemsProcessed(state.iterations() * 50000);
}

void BM_CoverageParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const DrawPlan val{2, StreamDomain::Validation, 50000, 4096};
  for (auto _ : state) benchmark::DoNotOptimize(nested_coverage_counts(table(), source(), val));
  state.SetItemsProcessed(state.iterations() * 50000);
}

void BM_CountInsideSerial(benchmark::State& state) {
  static const SampleBlock block = serial::draw_all(source(), plan(100000));
  const QuantileRectangle rect = table().rectangle(8, 0.05, Method::SlicedGrid);
  for (auto _ : state) benchmark::DoNotOptimize(serial::count_inside(rect, block));
  state.SetItemsProcessed(state.iterations() * 100000);
}

void BM_CountInsideParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  static const SampleBlock block = serial::draw_all(source(), plan(100000));
  const QuantileRectangle rect = table().rectangle(8, 0.05, Method::SlicedGrid);
  for (auto _ : state) benchmark::DoNotOptimize(count_inside(rect, block));
  state.SetItemsProcessed(state.iterations() * 100000);
}

const int kMaxThreads = omp_get_num_procs();

BENCHMARK(BM_DrawSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrawParallel)->RangeMultiplier(2)->Range(1, kMaxThreads)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuantilesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuantilesParallel)->RangeMultiplier(2)->Range(1, kMaxThreads)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverageSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverageParallel)->RangeMultiplier(2)->Range(1, kMaxThreads)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountInsideSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CountInsideParallel)->RangeMultiplier(2)->Range(1, kMaxThreads)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace credrect

BENCHMARK_MAIN();
