#include "credrect/coverage.hpp"

#include "credrect/error.hpp"

#include <cstdint>

namespace credrect {

std::size_t count_inside(const QuantileRectangle& rect, const SampleBlock& block) {
  if (static_cast<std::size_t>(block.cols()) != rect.d()) {
    throw Error(ErrorKind::DimensionMismatch, "sample width != rectangle dimension");
  }
  const auto rows = static_cast<std::int64_t>(block.rows());
  const auto d = static_cast<std::size_t>(block.cols());
  std::size_t inside = 0;
#pragma omp parallel for reduction(+ : inside) schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const double* x = block.row(r).data();
    bool in = true;
    for (std::size_t i = 0; i < d && in; ++i) in = x[i] >= rect.lower[i] && x[i] <= rect.upper[i];
    inside += in ? 1 : 0;
  }
  return inside;
}

double coverage(const QuantileRectangle& rect, const SampleBlock& validation) {
  if (validation.rows() == 0) throw Error(ErrorKind::InvalidArgument, "coverage needs at least one validation point");
  return static_cast<double>(count_inside(rect, validation)) / static_cast<double>(validation.rows());
}

double coverage(const QuantileRectangle& rect, const DrawSource& source, const DrawPlan& plan) {
  if (plan.total == 0) throw Error(ErrorKind::InvalidArgument, "coverage needs at least one validation point");
  if (static_cast<std::size_t>(source.dim()) != rect.d()) {
    throw Error(ErrorKind::DimensionMismatch, "source dimension != rectangle dimension");
  }
  const auto batches = static_cast<std::int64_t>(plan.batch_count());
  std::size_t inside = 0;
#pragma omp parallel for reduction(+ : inside) schedule(dynamic, 1)
  for (std::int64_t b = 0; b < batches; ++b) {
    const SampleBlock block = draw_batch(source, plan, static_cast<std::size_t>(b));
    const auto d = rect.d();
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
      const double* x = block.row(r).data();
      bool in = true;
      for (std::size_t i = 0; i < d && in; ++i) in = x[i] >= rect.lower[i] && x[i] <= rect.upper[i];
      inside += in ? 1 : 0;
    }
  }
  return static_cast<double>(inside) / static_cast<double>(plan.total);
}

}  // namespace credrect
