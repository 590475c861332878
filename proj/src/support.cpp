#include "credrect/support.hpp"

#include "credrect/error.hpp"
#include "credrect/vech.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace credrect {

std::string_view to_string(SupportMethod m) noexcept {
  switch (m) {
    case SupportMethod::BayesOptimal: return "bayes_optimal";
    case SupportMethod::BayesBonferroni: return "bayes_bonferroni";
    case SupportMethod::MtBonferroni: return "mt_bonferroni";
    case SupportMethod::MtHolm: return "mt_holm";
  }
  return "unknown";
}

std::optional<SupportMethod> parse_support_method(std::string_view name) noexcept {
  for (auto m : {SupportMethod::BayesOptimal, SupportMethod::BayesBonferroni, SupportMethod::MtBonferroni,
                 SupportMethod::MtHolm}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

bool SupportEstimate::contains(const Edge& e) const { return std::binary_search(edges.begin(), edges.end(), e); }

SupportEstimate support_from_rectangle(const QuantileRectangle& rect, SupportMethod method) {
  const std::size_t p = rect.p != 0 ? rect.p : matrix_dim_from_vech0(rect.d());
  if (vech0_length(p) != rect.d()) throw Error(ErrorKind::LengthMismatch, "rectangle is not over a vech0 space");
  SupportEstimate out;
  out.p = p;
  out.alpha = rect.nominal_alpha;
  out.method = method;
  std::size_t k = 0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j, ++k) {
      if (rect.lower[k] > 0.0 || rect.upper[k] < 0.0) out.edges.push_back({i, j});
    }
  }
  return out;
}

Matrix corr_test_pvalues(const TimeseriesMatrix& x) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "correlation test needs n >= 3");
  Matrix centered = x.rowwise() - x.colwise().mean();
  Vector norms = centered.colwise().norm();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (!(norms(j) > 1e-12 * std::sqrt(static_cast<double>(n)))) {
      throw Error(ErrorKind::DegenerateColumn, "column " + std::to_string(j) + " has zero variance");
    }
  }
  const double df = static_cast<double>(n - 2);
  const boost::math::students_t dist(df);
  Matrix pv = Matrix::Ones(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) {
      const double r = std::clamp(centered.col(i).dot(centered.col(j)) / (norms(i) * norms(j)), -1.0, 1.0);
      double pval = 0.0;
      if (std::abs(r) < 1.0) {
        const double t = std::abs(r) * std::sqrt(df) / std::sqrt(1.0 - r * r);
        pval = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, t)));
      }
      pv(i, j) = pval;
      pv(j, i) = pval;
    }
  }
  return pv;
}

SupportEstimate mt_adjust(const Matrix& pvalues, double alpha, SupportMethod method) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::OutOfRange, "alpha must lie in (0, 1)");
  if (pvalues.rows() != pvalues.cols()) throw Error(ErrorKind::DimensionMismatch, "p-value matrix must be square");
  if (method != SupportMethod::MtBonferroni && method != SupportMethod::MtHolm) {
    throw Error(ErrorKind::InvalidArgument, "mt_adjust supports mt_bonferroni and mt_holm");
  }
  const auto p = static_cast<std::size_t>(pvalues.rows());
  const std::size_t m = vech0_length(p);
  std::vector<double> pv(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto [i, j] = vech0_pair(k, p);
    pv[k] = pvalues(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  std::vector<bool> reject(m, false);
  if (method == SupportMethod::MtBonferroni) {
    for (std::size_t k = 0; k < m; ++k) reject[k] = pv[k] <= alpha / static_cast<double>(m);
  } else {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pv[a] < pv[b]; });
    for (std::size_t r = 0; r < m; ++r) {
      if (pv[order[r]] > alpha / static_cast<double>(m - r)) break;
      reject[order[r]] = true;
    }
  }
  SupportEstimate out;
  out.p = p;
  out.alpha = alpha;
  out.method = method;
  for (std::size_t k = 0; k < m; ++k) {
    if (reject[k]) {
      const auto [i, j] = vech0_pair(k, p);
      out.edges.push_back({i, j});
    }
  }
  return out;
}

}  // namespace credrect
