#include "credrect/comparison.hpp"

#include "credrect/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace credrect {

namespace {

void check_dims(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch, "dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

}  // namespace

double distance_to_rectangle(std::span<const double> ref, const QuantileRectangle& rect, Norm norm) {
  check_dims(ref.size(), rect.d());
  double linf = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double residual = ref[i] - std::clamp(ref[i], rect.lower[i], rect.upper[i]);
    linf = std::max(linf, std::abs(residual));
    sq += residual * residual;
  }
  return norm == Norm::Linf ? linf : std::sqrt(sq);
}

std::size_t DecisionReport::n_flagged() const {
  return static_cast<std::size_t>(std::count(delta.begin(), delta.end(), true));
}

DecisionReport local_decisions(std::span<const double> ref, const QuantileRectangle& rect) {
  check_dims(ref.size(), rect.d());
  DecisionReport out;
  const std::size_t d = rect.d();
  out.delta_plus.resize(d);
  out.delta_minus.resize(d);
  out.delta.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    out.delta_plus[i] = ref[i] < rect.lower[i];
    out.delta_minus[i] = ref[i] > rect.upper[i];
    out.delta[i] = out.delta_plus[i] || out.delta_minus[i];
    out.globally_different = out.globally_different || out.delta[i];
  }
  out.separation_linf = distance_to_rectangle(ref, rect, Norm::Linf);
  out.separation_l2 = distance_to_rectangle(ref, rect, Norm::L2);
  out.alpha = rect.nominal_alpha;
  return out;
}

bool directional_error(const DecisionReport& report, std::span<const double> theta, std::span<const double> ref) {
  check_dims(theta.size(), report.delta.size());
  check_dims(ref.size(), report.delta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (report.delta_plus[i] && theta[i] <= ref[i]) return true;
    if (report.delta_minus[i] && theta[i] >= ref[i]) return true;
  }
  return false;
}

std::string_view to_string(Direction d) noexcept { return d == Direction::Gained ? "gained" : "lost"; }

PairDiff compare_rectangles(const QuantileRectangle& a, const QuantileRectangle& b) {
  check_dims(a.d(), b.d());
  if (a.p != 0 && b.p != 0 && a.p != b.p) throw Error(ErrorKind::DimensionMismatch, "rectangles index different matrices");
  PairDiff out;
  out.alpha_a = a.nominal_alpha;
  out.alpha_b = b.nominal_alpha;
  for (std::size_t i = 0; i < a.d(); ++i) {
    if (a.upper[i] < b.lower[i]) {
      out.disjoint_dims.push_back({i, Direction::Gained});
    } else if (b.upper[i] < a.lower[i]) {
      out.disjoint_dims.push_back({i, Direction::Lost});
    }
  }
  out.globally_different = !out.disjoint_dims.empty();
  return out;
}

double mean_length(const QuantileRectangle& rect) {
  if (rect.d() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < rect.d(); ++i) total += rect.upper[i] - rect.lower[i];
  return total / static_cast<double>(rect.d());
}

double posterior_directional_error_rate(const DecisionReport& report, std::span<const double> ref,
                                        const DrawSource& source, const DrawPlan& plan) {
  check_dims(static_cast<std::size_t>(source.dim()), report.delta.size());
  if (plan.total == 0) throw Error(ErrorKind::InvalidArgument, "need at least one draw");
  const auto batches = static_cast<std::int64_t>(plan.batch_count());
  const std::size_t d = report.delta.size();
  std::size_t errors = 0;
#pragma omp parallel for reduction(+ : errors) schedule(dynamic, 1)
  for (std::int64_t b = 0; b < batches; ++b) {
    const SampleBlock block = draw_batch(source, plan, static_cast<std::size_t>(b));
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
      errors += directional_error(report, std::span<const double>(block.row(r).data(), d), ref) ? 1 : 0;
    }
  }
  return static_cast<double>(errors) / static_cast<double>(plan.total);
}

double posterior_ball_mass(std::span<const double> ref, double radius, Norm norm, const DrawSource& source,
                           const DrawPlan& plan) {
  check_dims(static_cast<std::size_t>(source.dim()), ref.size());
  if (plan.total == 0) throw Error(ErrorKind::InvalidArgument, "need at least one draw");
  const auto batches = static_cast<std::int64_t>(plan.batch_count());
  const std::size_t d = ref.size();
  std::size_t inside = 0;
#pragma omp parallel for reduction(+ : inside) schedule(dynamic, 1)
  for (std::int64_t b = 0; b < batches; ++b) {
    const SampleBlock block = draw_batch(source, plan, static_cast<std::size_t>(b));
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
      double linf = 0.0;
      double sq = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double diff = block(r, static_cast<Eigen::Index>(i)) - ref[i];
        linf = std::max(linf, std::abs(diff));
        sq += diff * diff;
      }
      const double dist = norm == Norm::Linf ? linf : std::sqrt(sq);
      inside += dist < radius ? 1 : 0;
    }
  }
  return static_cast<double>(inside) / static_cast<double>(plan.total);
}

}  // namespace credrect
