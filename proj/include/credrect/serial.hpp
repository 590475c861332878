#pragma once

// Single-threaded reference versions of the parallel kernels. They take the
// simplest route (everything resident, full sorts, direct containment
// checks) and exist so tests and benchmarks can hold the OpenMP kernels to
// bit-identical results.

#include "credrect/draw_source.hpp"
#include "credrect/rectangle.hpp"
#include "credrect/sliced_grid.hpp"

#include <span>
#include <vector>

namespace credrect::serial {

SampleBlock draw_all(const DrawSource& source, const DrawPlan& plan);

MarginalQuantileTable estimate_marginal_quantiles(const DrawSource& source, std::span<const double> levels,
                                                  const DrawPlan& plan);

std::vector<std::size_t> nested_coverage_counts(const MarginalQuantileTable& table, const DrawSource& source,
                                                const DrawPlan& validation);

std::size_t count_inside(const QuantileRectangle& rect, const SampleBlock& block);

}  // namespace credrect::serial
