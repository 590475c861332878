#include "credrect/rectangle.hpp"

#include "credrect/error.hpp"

#include <algorithm>
#include <cmath>

namespace credrect {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Bonferroni: return "bonferroni";
    case Method::Naive: return "naive";
    case Method::Bghm: return "bghm";
    case Method::OnlineBghm: return "online_bghm";
    case Method::SlicedGrid: return "sliced_grid";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : {Method::Bonferroni, Method::Naive, Method::Bghm, Method::OnlineBghm, Method::SlicedGrid}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

bool QuantileRectangle::contains(std::span<const double> point) const {
  if (point.size() != lower.size()) throw Error(ErrorKind::DimensionMismatch, "point dimension != rectangle dimension");
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] < lower[i] || point[i] > upper[i]) return false;
  }
  return true;
}

void QuantileRectangle::validate() const {
  if (lower.size() != upper.size()) throw Error(ErrorKind::LengthMismatch, "lower and upper differ in length");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw Error(ErrorKind::InvalidArgument, "lower > upper in dimension " + std::to_string(i));
    }
  }
  if (!(level_t > 0.0 && level_t <= 1.0)) throw Error(ErrorKind::OutOfRange, "level_t outside (0, 1]");
}

std::size_t floor_alpha_count(double alpha, std::size_t m) {
  const double x = alpha * static_cast<double>(m);
  return static_cast<std::size_t>(std::floor(x + 1e-9 * std::max(1.0, x)));
}

std::size_t order_statistic_index(double level, std::size_t n) {
  const double x = level * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
  return std::max<std::size_t>(k, 1);
}

}  // namespace credrect
