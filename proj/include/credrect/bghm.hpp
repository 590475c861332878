#pragma once

#include "credrect/rectangle.hpp"
#include "credrect/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace credrect {

// Ranks are 1-based positions in a strict total order per coordinate: by
// value, ties broken by first-seen (row order, or arrival order when
// streaming). The score of a point in a set D is
//   S = max(|D| + 1 - min_i r_i, max_i r_i) = |D| + 1 - depth,
// where depth = min_i min(r_i, |D| + 1 - r_i).

/// Score S of row `point` within `batch`.
std::size_t score_S(std::size_t point, const SampleBlock& batch);

/// Scores of every row.
std::vector<std::size_t> scores(const SampleBlock& batch);

/// Depth of every row within `points`, exact wherever it is <= limit; rows
/// deeper than limit get kDeep. `seq` supplies the tie-breaking order.
inline constexpr std::uint32_t kDeep = UINT32_MAX;
std::vector<std::uint32_t> shallow_depths(const SampleBlock& points, std::span<const std::uint64_t> seq,
                                          std::size_t limit);

struct BghmResult {
  QuantileRectangle rect;
  double t_hat = 0.0;
  std::size_t j_star = 0;
  std::size_t k = 0;
  std::size_t samples = 0;
};

/// Smallest order-statistic rectangle containing at least k of the M rows:
/// j* is the k-th smallest score, bounds are the (M+1-j*)-th and j*-th
/// smallest values per coordinate, t_hat = 2(M+1-j*)/(M+1).
BghmResult bghm_rectangle(const SampleBlock& samples, std::size_t k, double nominal_alpha);

/// k = ceil((1 - alpha) M), computed as M - floor(alpha M).
BghmResult bghm_rectangle(const SampleBlock& samples, double alpha);

}  // namespace credrect
