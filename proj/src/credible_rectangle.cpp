#include "credrect/credible_rectangle.hpp"

#include "credrect/bghm.hpp"
#include "credrect/draw_source.hpp"
#include "credrect/error.hpp"
#include "credrect/online_bghm.hpp"
#include "credrect/sliced_grid.hpp"

#include <algorithm>
#include <cmath>

namespace credrect {

Method default_method_for(std::size_t d) {
  if (d <= 50) return Method::Bghm;
  if (d <= 500) return Method::OnlineBghm;
  return Method::SlicedGrid;
}

std::size_t default_sample_count(Method method, std::size_t d, double alpha) {
  if (method == Method::SlicedGrid) return default_stage1_samples(d, alpha);
  const auto tail = static_cast<std::size_t>(std::ceil(20.0 * static_cast<double>(d) / alpha));
  return std::max<std::size_t>(100000, tail);
}

QuantileRectangle credible_rectangle(const PosteriorSpec& posterior, double alpha, const RectangleOptions& options,
                                     std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::OutOfRange, "alpha must lie in (0, 1)");
  posterior.validate();
  const auto d = static_cast<std::size_t>(posterior.d());
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "need at least two variables");
  const Method method = options.method.value_or(default_method_for(d));
  const std::size_t m = options.samples != 0 ? options.samples : default_sample_count(method, d, alpha);
  const CorrelationPosteriorSource source(posterior.scale, posterior.dof);

  QuantileRectangle rect;
  switch (method) {
    case Method::Bonferroni:
    case Method::Naive:
      rect = special_rectangle(source, alpha, method == Method::Bonferroni ? SpecialKind::Bonferroni : SpecialKind::Naive,
                               m, seed, options.batch_size);
      break;
    case Method::Bghm:
      rect = bghm_rectangle(draw_all(source, {seed, StreamDomain::Estimation, m, options.batch_size}), alpha).rect;
      break;
    case Method::OnlineBghm: {
      auto stream = CorrBatchStream::with_total(posterior, m, options.batch_size, seed);
      rect = online_bghm(stream, alpha, m).rect;
      break;
    }
    case Method::SlicedGrid: {
      const auto grid = log_spaced_grid(alpha, d, options.grid_size);
      SlicedGridOptions so;
      so.samples = m;
      so.validation_samples = options.validation_samples;
      so.batch_size = options.batch_size;
      so.memory_budget_bytes = options.memory_budget_bytes;
      so.bonferroni_floor = true;
      rect = sliced_quantile_grid(source, alpha, grid, so, seed).rect;
      break;
    }
  }
  rect.p = static_cast<std::size_t>(posterior.p());
  return rect;
}

}  // namespace credrect
