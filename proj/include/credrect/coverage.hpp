#pragma once

#include "credrect/draw_source.hpp"
#include "credrect/rectangle.hpp"

namespace credrect {

/// Fraction of rows of `validation` inside the (closed) rectangle.
double coverage(const QuantileRectangle& rect, const SampleBlock& validation);

/// Same, over plan.total fresh draws generated batch-wise in parallel.
double coverage(const QuantileRectangle& rect, const DrawSource& source, const DrawPlan& plan);

std::size_t count_inside(const QuantileRectangle& rect, const SampleBlock& block);

}  // namespace credrect
