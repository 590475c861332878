#pragma once

#include "credrect/rectangle.hpp"
#include "credrect/types.hpp"

#include <compare>
#include <optional>
#include <string_view>
#include <vector>

namespace credrect {

enum class SupportMethod { BayesOptimal, BayesBonferroni, MtBonferroni, MtHolm };

std::string_view to_string(SupportMethod m) noexcept;
std::optional<SupportMethod> parse_support_method(std::string_view name) noexcept;

/// Zero-based pair (i, j), i < j.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct SupportEstimate {
  std::size_t p = 0;
  std::vector<Edge> edges;  // sorted in vech0 order
  double alpha = 0.0;
  SupportMethod method = SupportMethod::BayesOptimal;

  bool contains(const Edge& e) const;
};

/// Edges whose interval excludes zero strictly (lower > 0 or upper < 0).
SupportEstimate support_from_rectangle(const QuantileRectangle& rect, SupportMethod method);

/// Two-sided p-values of the t-test on the sample correlation of every pair,
/// t = r sqrt(n - 2) / sqrt(1 - r^2) with n - 2 degrees of freedom. Diagonal is 1.
Matrix corr_test_pvalues(const TimeseriesMatrix& x);

/// Bonferroni (reject p <= alpha / m) or Holm step-down over the m = p(p-1)/2
/// upper-triangular p-values.
SupportEstimate mt_adjust(const Matrix& pvalues, double alpha, SupportMethod method);

}  // namespace credrect
