#pragma once

#include "credrect/draw_source.hpp"
#include "credrect/rectangle.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace credrect {

enum class Norm { Linf, L2 };

/// Minimal distance from ref to the rectangle: clamp each coordinate into
/// [lower, upper] and take the norm of the residual. 0 when ref is inside.
double distance_to_rectangle(std::span<const double> ref, const QuantileRectangle& rect, Norm norm);

/// Signed per-dimension decisions against a reference point.
/// delta_plus[i]: ref_i < lower_i, i.e. theta_i is declared above the reference.
/// delta_minus[i]: ref_i > upper_i, i.e. theta_i is declared below it.
struct DecisionReport {
  std::vector<bool> delta_plus;
  std::vector<bool> delta_minus;
  std::vector<bool> delta;
  bool globally_different = false;
  double separation_linf = 0.0;
  double separation_l2 = 0.0;
  double alpha = 0.0;

  std::size_t n_flagged() const;
  double separation(Norm norm) const { return norm == Norm::Linf ? separation_linf : separation_l2; }
};

DecisionReport local_decisions(std::span<const double> ref, const QuantileRectangle& rect);

/// True when theta contradicts at least one flagged direction:
/// delta_plus_i with theta_i <= ref_i, or delta_minus_i with theta_i >= ref_i.
bool directional_error(const DecisionReport& report, std::span<const double> theta, std::span<const double> ref);

enum class Direction { Gained, Lost };
std::string_view to_string(Direction d) noexcept;

/// Dimensions where the intervals of two rectangles do not overlap.
/// Gained: b lies strictly above a. Lost: b lies strictly below a.
struct PairDiff {
  struct Entry {
    std::size_t dim;
    Direction direction;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> disjoint_dims;
  bool globally_different = false;
  double alpha_a = 0.0;
  double alpha_b = 0.0;
};

/// Axis-aligned boxes are disjoint iff some axis separates them, so the
/// global flag is derived from the per-dimension checks.
PairDiff compare_rectangles(const QuantileRectangle& a, const QuantileRectangle& b);

/// Mean interval width.
double mean_length(const QuantileRectangle& rect);

/// Posterior probability, over plan.total fresh draws, that a draw commits at
/// least one directional error against the report's flagged set.
double posterior_directional_error_rate(const DecisionReport& report, std::span<const double> ref,
                                        const DrawSource& source, const DrawPlan& plan);

/// Posterior probability, over plan.total fresh draws, of ||theta - ref|| < radius.
double posterior_ball_mass(std::span<const double> ref, double radius, Norm norm, const DrawSource& source,
                           const DrawPlan& plan);

}  // namespace credrect
