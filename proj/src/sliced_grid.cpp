#include "credrect/sliced_grid.hpp"

#include "credrect/error.hpp"
#include "credrect/tail_quantiles.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace credrect {

namespace {

std::size_t matrix_dim_of(const DrawSource& source) {
  if (const auto* corr = dynamic_cast<const CorrelationPosteriorSource*>(&source)) {
    return static_cast<std::size_t>(corr->matrix_dim());
  }
  return 0;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::OutOfRange, "alpha must lie in (0, 1)");
}

}  // namespace

std::vector<double> log_spaced_grid(double alpha, std::size_t d, std::size_t k) {
  check_alpha(alpha);
  if (d == 0 || k == 0) throw Error(ErrorKind::InvalidArgument, "grid needs d >= 1 and k >= 1");
  const double lo = alpha / static_cast<double>(d);
  if (k == 1 || d == 1) return {alpha};
  std::vector<double> grid(k);
  const double step = std::log(alpha / lo) / static_cast<double>(k - 1);
  for (std::size_t i = 0; i < k; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = alpha;
  return grid;
}

std::size_t default_stage1_samples(std::size_t d, double alpha) {
  const auto need = static_cast<std::size_t>(std::ceil(20.0 * static_cast<double>(d) / alpha));
  return std::max<std::size_t>(1'000'000, need);
}

void require_tail_samples(double level_t, std::size_t n) {
  const double tail = static_cast<double>(n) * level_t / 2.0;
  if (tail < kMinTailCount * (1.0 - 1e-9)) {
    std::ostringstream os;
    os << "level t = " << level_t << " with " << n << " draws leaves " << tail << " draws per tail (need "
       << kMinTailCount << ")";
    throw Error(ErrorKind::InsufficientSamples, os.str());
  }
}

QuantileRectangle MarginalQuantileTable::rectangle(std::size_t level_index, double alpha, Method method) const {
  const std::size_t k_levels = n_levels();
  if (level_index >= k_levels) throw Error(ErrorKind::OutOfRange, "grid level index out of range");
  QuantileRectangle rect;
  rect.lower.resize(d);
  rect.upper.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    rect.lower[j] = lower[j * k_levels + level_index];
    rect.upper[j] = upper[j * k_levels + level_index];
  }
  rect.level_t = levels[level_index];
  rect.nominal_alpha = alpha;
  rect.method = method;
  return rect;
}

MarginalQuantileTable estimate_marginal_quantiles(const DrawSource& source, std::span<const double> levels,
                                                  const DrawPlan& plan, std::size_t memory_budget_bytes) {
  if (levels.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
  if (!std::is_sorted(levels.begin(), levels.end())) throw Error(ErrorKind::InvalidArgument, "grid must be ascending");
  for (double t : levels) {
    if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorKind::OutOfRange, "grid level outside (0, 1]");
  }
  require_tail_samples(levels.front(), plan.total);

  const auto d = static_cast<std::size_t>(source.dim());
  const std::size_t k_levels = levels.size();
  std::vector<std::size_t> index(k_levels);
  for (std::size_t k = 0; k < k_levels; ++k) index[k] = order_statistic_index(levels[k] / 2.0, plan.total);
  const std::size_t capacity = index.back();

  std::size_t chunk = d;
  if (memory_budget_bytes > 0) {
    const std::size_t per_coord = MarginalTails::bytes_per_coordinate(capacity);
    chunk = std::clamp<std::size_t>(memory_budget_bytes / std::max<std::size_t>(per_coord, 1), 1, d);
  }

  MarginalQuantileTable table;
  table.d = d;
  table.levels.assign(levels.begin(), levels.end());
  table.lower.resize(d * k_levels);
  table.upper.resize(d * k_levels);
  table.samples = plan.total;

  const std::size_t batches = plan.batch_count();
  const std::size_t group = 2 * static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
  for (std::size_t c0 = 0; c0 < d; c0 += chunk) {
    const std::size_t c1 = std::min(d, c0 + chunk);
    MarginalTails tails(static_cast<Eigen::Index>(c0), static_cast<Eigen::Index>(c1 - c0), capacity);
    for (std::size_t b0 = 0; b0 < batches; b0 += group) {
      const auto blocks = draw_batches(source, plan, b0, std::min(group, batches - b0));
      for (const auto& block : blocks) tails.update(block);
    }
    tails.finalize();
    for (std::size_t j = c0; j < c1; ++j) {
      const auto local = static_cast<Eigen::Index>(j - c0);
      for (std::size_t k = 0; k < k_levels; ++k) {
        table.lower[j * k_levels + k] = tails.kth_smallest(local, index[k]);
        table.upper[j * k_levels + k] = tails.kth_largest(local, index[k]);
      }
    }
  }
  return table;
}

std::vector<std::size_t> nested_coverage_counts(const MarginalQuantileTable& table, const DrawSource& source,
                                                const DrawPlan& validation) {
  if (static_cast<std::size_t>(source.dim()) != table.d) {
    throw Error(ErrorKind::DimensionMismatch, "source dimension != table dimension");
  }
  const std::size_t k_levels = table.n_levels();
  const std::size_t d = table.d;
  // histogram[h] = draws inside exactly the first h rectangles.
  std::vector<std::size_t> histogram(k_levels + 1, 0);
  const auto batches = static_cast<std::int64_t>(validation.batch_count());
#pragma omp parallel
  {
    std::vector<std::size_t> local(k_levels + 1, 0);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < batches; ++b) {
      const SampleBlock block = draw_batch(source, validation, static_cast<std::size_t>(b));
      for (Eigen::Index r = 0; r < block.rows(); ++r) {
        const double* x = block.row(r).data();
        std::size_t inside = k_levels;
        for (std::size_t j = 0; j < d && inside > 0; ++j) {
          const double* lo = &table.lower[j * k_levels];
          const double* hi = &table.upper[j * k_levels];
          while (inside > 0 && !(x[j] >= lo[inside - 1] && x[j] <= hi[inside - 1])) --inside;
        }
        ++local[inside];
      }
    }
#pragma omp critical
    for (std::size_t h = 0; h <= k_levels; ++h) histogram[h] += local[h];
  }
  std::vector<std::size_t> counts(k_levels, 0);
  std::size_t running = 0;
  for (std::size_t k = k_levels; k-- > 0;) {
    running += histogram[k + 1];
    counts[k] = running;
  }
  return counts;
}

SlicedGridResult sliced_quantile_grid(const DrawSource& source, double alpha, std::span<const double> grid,
                                      const SlicedGridOptions& options, std::uint64_t seed) {
  check_alpha(alpha);
  const auto d = static_cast<std::size_t>(source.dim());
  const double lo = alpha / static_cast<double>(d);
  for (double t : grid) {
    if (t < lo * (1.0 - 1e-12) || t > alpha * (1.0 + 1e-12)) {
      throw Error(ErrorKind::OutOfRange, "grid level outside [alpha/d, alpha]");
    }
  }
  if (options.validation_samples == 0) throw Error(ErrorKind::InvalidArgument, "validation_samples must be >= 1");
  const std::size_t samples = options.samples == 0 ? default_stage1_samples(d, alpha) : options.samples;

  const DrawPlan estimation{seed, StreamDomain::Estimation, samples, options.batch_size};
  const MarginalQuantileTable table = estimate_marginal_quantiles(source, grid, estimation, options.memory_budget_bytes);

  const DrawPlan validation{seed, StreamDomain::Validation, options.validation_samples, options.batch_size};
  const auto counts = nested_coverage_counts(table, source, validation);
  const std::size_t need = options.validation_samples - floor_alpha_count(alpha, options.validation_samples);

  SlicedGridResult result;
  result.levels = table.levels;
  result.coverage.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    result.coverage[k] = static_cast<double>(counts[k]) / static_cast<double>(options.validation_samples);
  }
  std::size_t chosen = counts.size();
  for (std::size_t k = counts.size(); k-- > 0;) {
    if (counts[k] >= need) {
      chosen = k;
      break;
    }
  }
  if (chosen == counts.size() && options.bonferroni_floor && table.levels.front() <= lo * (1.0 + 1e-12)) chosen = 0;
  if (chosen == counts.size()) {
    std::ostringstream os;
    os << "smallest grid level t = " << table.levels.front() << " reaches validation coverage "
       << result.coverage.front() << " < " << 1.0 - alpha;
    throw Error(ErrorKind::NoFeasibleLevel, os.str());
  }
  result.selected = chosen;
  result.rect = table.rectangle(chosen, alpha, Method::SlicedGrid);
  result.rect.p = matrix_dim_of(source);
  return result;
}

QuantileRectangle special_rectangle(const SampleBlock& samples, double alpha, SpecialKind kind) {
  check_alpha(alpha);
  const auto d = static_cast<std::size_t>(samples.cols());
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "samples have no coordinates");
  const double t = kind == SpecialKind::Bonferroni ? alpha / static_cast<double>(d) : alpha;
  const auto n = static_cast<std::size_t>(samples.rows());
  require_tail_samples(t, n);
  const std::size_t k = order_statistic_index(t / 2.0, n);

  QuantileRectangle rect;
  rect.lower.resize(d);
  rect.upper.resize(d);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t r = 0; r < n; ++r) column[r] = samples(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(k - 1), column.end());
    rect.lower[j] = column[k - 1];
    std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(n - k), column.end());
    rect.upper[j] = column[n - k];
  }
  rect.level_t = t;
  rect.nominal_alpha = alpha;
  rect.method = kind == SpecialKind::Bonferroni ? Method::Bonferroni : Method::Naive;
  return rect;
}

QuantileRectangle special_rectangle(const DrawSource& source, double alpha, SpecialKind kind, std::size_t samples,
                                    std::uint64_t seed, std::size_t batch_size) {
  check_alpha(alpha);
  const auto d = static_cast<std::size_t>(source.dim());
  const double t = kind == SpecialKind::Bonferroni ? alpha / static_cast<double>(d) : alpha;
  const DrawPlan plan{seed, StreamDomain::Estimation, samples, batch_size};
  const std::vector<double> level{t};
  const auto table = estimate_marginal_quantiles(source, level, plan);
  QuantileRectangle rect = table.rectangle(0, alpha, kind == SpecialKind::Bonferroni ? Method::Bonferroni : Method::Naive);
  rect.p = matrix_dim_of(source);
  return rect;
}

}  // namespace credrect
