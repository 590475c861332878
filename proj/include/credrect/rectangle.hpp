#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace credrect {

enum class Method { Bonferroni, Naive, Bghm, OnlineBghm, SlicedGrid };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// Cartesian product of closed marginal intervals [lower_i, upper_i], all at
/// the common quantile level t: lower_i = q_i(t/2), upper_i = q_i(1 - t/2).
struct QuantileRectangle {
  std::vector<double> lower;
  std::vector<double> upper;
  double level_t = 0.0;
  double nominal_alpha = 0.0;
  Method method = Method::Bonferroni;
  /// Matrix dimension when the coordinates are vech0 of a p x p matrix, else 0.
  std::size_t p = 0;

  std::size_t d() const noexcept { return lower.size(); }
  bool contains(std::span<const double> point) const;

  /// Throws on lower > upper, length mismatch or level outside (0, 1].
  void validate() const;
};

/// floor(alpha * M), robust to representation error in alpha * M.
std::size_t floor_alpha_count(double alpha, std::size_t m);

/// Index of the ceil(level * n)-th order statistic (1-based), robust to
/// representation error; never less than 1.
std::size_t order_statistic_index(double level, std::size_t n);

}  // namespace credrect
