#pragma once

#include "credrect/draw_source.hpp"
#include "credrect/rectangle.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace credrect {

/// Every estimated tail must hold at least this many draws: N * t / 2 >= 10.
inline constexpr double kMinTailCount = 10.0;

/// K levels log-spaced from alpha/d to alpha inclusive, ascending.
std::vector<double> log_spaced_grid(double alpha, std::size_t d, std::size_t k);

/// max(1e6, ceil(20 d / alpha)).
std::size_t default_stage1_samples(std::size_t d, double alpha);

/// Throws InsufficientSamples unless n * level_t / 2 >= kMinTailCount.
void require_tail_samples(double level_t, std::size_t n);

/// Marginal quantiles q_j(t_k/2) and q_j(1 - t_k/2) for every coordinate j and
/// grid level t_k. Stored coordinate-major: index j * levels + k.
struct MarginalQuantileTable {
  std::size_t d = 0;
  std::vector<double> levels;
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t samples = 0;

  std::size_t n_levels() const noexcept { return levels.size(); }
  QuantileRectangle rectangle(std::size_t level_index, double alpha, Method method) const;
};

/// Stage 1: bounded per-coordinate tail buffers over plan.total draws. When
/// the buffers for all coordinates exceed memory_budget_bytes (0 = no limit),
/// coordinates are processed in chunks, each chunk replaying the same
/// substreams, so the result does not depend on the budget.
MarginalQuantileTable estimate_marginal_quantiles(const DrawSource& source, std::span<const double> levels,
                                                  const DrawPlan& plan, std::size_t memory_budget_bytes = 0);

/// Stage 2 helper: counts[k] = number of validation draws inside R(t_k).
/// Relies on the rectangles being nested (R(t_k) shrinks as k grows).
std::vector<std::size_t> nested_coverage_counts(const MarginalQuantileTable& table, const DrawSource& source,
                                                const DrawPlan& validation);

struct SlicedGridOptions {
  std::size_t samples = 0;  // 0: default_stage1_samples
  std::size_t validation_samples = 100000;
  std::size_t batch_size = 4096;
  std::size_t memory_budget_bytes = 0;
  // When the smallest grid level is alpha/d and still fails validation, select
  // it anyway: the union bound already guarantees its coverage, so the miss is
  // validation noise.
  bool bonferroni_floor = false;
};

struct SlicedGridResult {
  QuantileRectangle rect;
  std::vector<double> levels;
  std::vector<double> coverage;  // validation coverage of R(t_k)
  std::size_t selected = 0;
};

/// Returns R(t_k) for the largest grid level whose validation coverage is at
/// least 1 - alpha. Throws NoFeasibleLevel if even the smallest level fails
/// (unless options.bonferroni_floor applies).
SlicedGridResult sliced_quantile_grid(const DrawSource& source, double alpha, std::span<const double> grid,
                                      const SlicedGridOptions& options, std::uint64_t seed);

enum class SpecialKind { Bonferroni, Naive };

/// Bonferroni (t = alpha/d) or naive (t = alpha) rectangle from resident draws.
QuantileRectangle special_rectangle(const SampleBlock& samples, double alpha, SpecialKind kind);

/// Same from `samples` streamed draws of the source.
QuantileRectangle special_rectangle(const DrawSource& source, double alpha, SpecialKind kind, std::size_t samples,
                                    std::uint64_t seed, std::size_t batch_size = 4096);

}  // namespace credrect
