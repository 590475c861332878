#include "credrect/coverage.hpp"
#include "credrect/serial.hpp"
#include "credrect/simulation.hpp"
#include "credrect/sliced_grid.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>
#include <omp.h>

namespace credrect {
namespace {

// Restores the thread count when a test ends.
class ThreadCount {
 public:
  explicit ThreadCount(int n) : saved_(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved_); }

 private:
  int saved_;
};

CorrelationPosteriorSource toy_source() {
  return CorrelationPosteriorSource(make_equicorrelation(7, 0.5), 60.0);
}

TEST(ParallelKernels, DrawsMatchSerialReference) {
  const auto src = toy_source();
  const DrawPlan plan{1, StreamDomain::Estimation, 10007, 500};
  const SampleBlock reference = serial::draw_all(src, plan);
  for (int threads : {1, 2, 4}) {
    ThreadCount guard(threads);
    EXPECT_EQ(draw_all(src, plan), reference) << threads;
  }
}

TEST(ParallelKernels, QuantileTableMatchesSerialReference) {
  const auto src = toy_source();
  const auto levels = log_spaced_grid(0.05, src.dim(), 8);
  const DrawPlan plan{2, StreamDomain::Estimation, 30000, 1000};
  const MarginalQuantileTable reference = serial::estimate_marginal_quantiles(src, levels, plan);
  for (int threads : {1, 4}) {
    ThreadCount guard(threads);
    const MarginalQuantileTable table = estimate_marginal_quantiles(src, levels, plan);
    EXPECT_EQ(table.lower, reference.lower) << threads;
    EXPECT_EQ(table.upper, reference.upper) << threads;
  }
}

TEST(ParallelKernels, CoverageCountsMatchSerialReference) {
  const auto src = toy_source();
  const auto levels = log_spaced_grid(0.05, src.dim(), 8);
  const MarginalQuantileTable table =
      serial::estimate_marginal_quantiles(src, levels, DrawPlan{3, StreamDomain::Estimation, 30000, 1000});
  const DrawPlan val{4, StreamDomain::Validation, 20000, 999};
  const auto reference = serial::nested_coverage_counts(table, src, val);
  const SampleBlock block = serial::draw_all(src, val);
  for (int threads : {1, 4}) {
    ThreadCount guard(threads);
    EXPECT_EQ(nested_coverage_counts(table, src, val), reference) << threads;
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const QuantileRectangle r = table.rectangle(k, 0.05, Method::SlicedGrid);
      EXPECT_EQ(count_inside(r, block), serial::count_inside(r, block));
      EXPECT_EQ(count_inside(r, block), reference[k]);
    }
  }
}

TEST(ParallelKernels, SlicedGridIndependentOfThreadCount) {
  const auto src = toy_source();
  const auto grid = log_spaced_grid(0.05, src.dim(), 10);
  SlicedGridOptions opts;
  opts.samples = 40000;
  opts.validation_samples = 20000;
  std::vector<SlicedGridResult> results;
  for (int threads : {1, 4}) {
    ThreadCount guard(threads);
    results.push_back(sliced_quantile_grid(src, 0.05, grid, opts, 5));
  }
  EXPECT_EQ(results[0].rect.lower, results[1].rect.lower);
  EXPECT_EQ(results[0].rect.upper, results[1].rect.upper);
  EXPECT_EQ(results[0].coverage, results[1].coverage);
}

}  // namespace
}  // namespace credrect
