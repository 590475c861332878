#include "credrect/serial.hpp"

#include "credrect/error.hpp"

#include <algorithm>

namespace credrect::serial {

SampleBlock draw_all(const DrawSource& source, const DrawPlan& plan) {
  SampleBlock all(static_cast<Eigen::Index>(plan.total), source.dim());
  for (std::size_t b = 0; b < plan.batch_count(); ++b) {
    all.middleRows(static_cast<Eigen::Index>(b * plan.batch_size), static_cast<Eigen::Index>(plan.batch_rows(b))) =
        draw_batch(source, plan, b);
  }
  return all;
}

MarginalQuantileTable estimate_marginal_quantiles(const DrawSource& source, std::span<const double> levels,
                                                  const DrawPlan& plan) {
  require_tail_samples(levels.front(), plan.total);
  const SampleBlock all = serial::draw_all(source, plan);
  const auto d = static_cast<std::size_t>(source.dim());
  const std::size_t n = plan.total;
  MarginalQuantileTable table;
  table.d = d;
  table.levels.assign(levels.begin(), levels.end());
  table.lower.resize(d * levels.size());
  table.upper.resize(d * levels.size());
  table.samples = n;
  std::vector<double> column(n);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t r = 0; r < n; ++r) column[r] = all(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    std::sort(column.begin(), column.end());
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const std::size_t idx = order_statistic_index(levels[k] / 2.0, n);
      table.lower[j * levels.size() + k] = column[idx - 1];
      table.upper[j * levels.size() + k] = column[n - idx];
    }
  }
  return table;
}

std::vector<std::size_t> nested_coverage_counts(const MarginalQuantileTable& table, const DrawSource& source,
                                                const DrawPlan& validation) {
  std::vector<QuantileRectangle> rects;
  for (std::size_t k = 0; k < table.n_levels(); ++k) rects.push_back(table.rectangle(k, 0.5, Method::SlicedGrid));
  std::vector<std::size_t> counts(rects.size(), 0);
  for (std::size_t b = 0; b < validation.batch_count(); ++b) {
    const SampleBlock block = draw_batch(source, validation, b);
    for (std::size_t k = 0; k < rects.size(); ++k) counts[k] += count_inside(rects[k], block);
  }
  return counts;
}

std::size_t count_inside(const QuantileRectangle& rect, const SampleBlock& block) {
  if (static_cast<std::size_t>(block.cols()) != rect.d()) {
    throw Error(ErrorKind::DimensionMismatch, "sample width != rectangle dimension");
  }
  std::size_t inside = 0;
  for (Eigen::Index r = 0; r < block.rows(); ++r) {
    inside += rect.contains(std::span<const double>(block.row(r).data(), rect.d())) ? 1 : 0;
  }
  return inside;
}

}  // namespace credrect::serial
