#pragma once

#include "credrect/posterior.hpp"
#include "credrect/rectangle.hpp"

#include <cstdint>

namespace credrect {

/// bghm up to d = 50, online_bghm up to 500, sliced_grid beyond.
Method default_method_for(std::size_t d);

/// Posterior draws used when the caller leaves the count at 0: for the
/// sliced grid the stage-1 default, otherwise max(1e5, ceil(20 d / alpha)).
std::size_t default_sample_count(Method method, std::size_t d, double alpha);

struct RectangleOptions {
  std::optional<Method> method;  // empty: default_method_for(d)
  std::size_t samples = 0;
  std::size_t validation_samples = 100000;  // sliced grid only
  std::size_t grid_size = 16;               // sliced grid only
  std::size_t batch_size = 4096;
  std::size_t memory_budget_bytes = 0;  // sliced grid only; 0 = unbounded
};

/// 1 - alpha credible rectangle for the correlations of the posterior.
QuantileRectangle credible_rectangle(const PosteriorSpec& posterior, double alpha, const RectangleOptions& options,
                                     std::uint64_t seed);

}  // namespace credrect
