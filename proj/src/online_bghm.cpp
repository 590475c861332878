#include "credrect/online_bghm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace credrect {

OnlineBghm::OnlineBghm(Eigen::Index dim, double alpha, std::size_t total_m, bool verify_merges)
    : dim_(dim), alpha_(alpha), total_m_(total_m), verify_(verify_merges) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::OutOfRange, "alpha must lie in (0, 1)");
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (total_m == 0) throw Error(ErrorKind::InvalidArgument, "total_M must be >= 1");
  q_ = floor_alpha_count(alpha, total_m) + 1;
  extremes_.points.resize(0, dim);
  if (verify_) all_points_.resize(0, dim);
}

// Depths of w, exact at least up to tau + slack(tau), where tau is the q-th
// smallest depth (returned through `tau`).
std::vector<std::uint32_t> OnlineBghm::depths_up_to_quota(const SampleBlock& w, const std::vector<std::uint64_t>& seq,
                                                          std::size_t& tau) const {
  const auto n = static_cast<std::size_t>(w.rows());
  std::size_t limit = std::max<std::size_t>(depth_hint_, q_ / (2 * static_cast<std::size_t>(dim_)) + 1);
  while (true) {
    auto depth = shallow_depths(w, seq, limit);
    const bool exact_all = 2 * limit + 1 >= n;
    std::vector<std::uint32_t> finite;
    finite.reserve(n);
    for (auto v : depth) {
      if (v != kDeep) finite.push_back(v);
    }
    if (finite.size() < q_) {
      if (exact_all) throw std::logic_error("fewer points than the retention quota");
      limit *= 2;
      continue;
    }
    std::nth_element(finite.begin(), finite.begin() + static_cast<std::ptrdiff_t>(q_ - 1), finite.end());
    tau = finite[q_ - 1];
    if (tau + slack(tau) > limit && !exact_all) {
      limit = tau + slack(tau);
      continue;
    }
    return depth;
  }
}

void OnlineBghm::push(const SampleBlock& batch) {
  if (batch.cols() != dim_) throw Error(ErrorKind::DimensionMismatch, "batch width != dimension");
  if (extremes_.total_seen + static_cast<std::size_t>(batch.rows()) > total_m_) {
    throw Error(ErrorKind::InvalidArgument, "stream yields more than total_M points");
  }
  const auto kept = extremes_.points.rows();
  SampleBlock w(kept + batch.rows(), dim_);
  w.topRows(kept) = extremes_.points;
  w.bottomRows(batch.rows()) = batch;
  std::vector<std::uint64_t> seq = extremes_.seq;
  for (Eigen::Index r = 0; r < batch.rows(); ++r) seq.push_back(extremes_.total_seen + static_cast<std::uint64_t>(r));
  extremes_.total_seen += static_cast<std::size_t>(batch.rows());
  peak_ = std::max(peak_, static_cast<std::size_t>(w.rows()));
  if (verify_) {
    SampleBlock grown(all_points_.rows() + batch.rows(), dim_);
    grown.topRows(all_points_.rows()) = all_points_;
    grown.bottomRows(batch.rows()) = batch;
    all_points_ = std::move(grown);
  }

  const auto n = static_cast<std::size_t>(w.rows());
  std::vector<std::uint32_t> depth;
  std::size_t keep_limit = std::numeric_limits<std::size_t>::max();
  if (n > q_) {
    std::size_t tau = 0;
    depth = depths_up_to_quota(w, seq, tau);
    keep_limit = tau + slack(tau);
    depth_hint_ = keep_limit;
  } else {
    depth = shallow_depths(w, seq, n);
  }

  std::vector<Eigen::Index> keep;
  keep.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (depth[i] != kDeep && depth[i] <= keep_limit) keep.push_back(static_cast<Eigen::Index>(i));
  }
  if (keep.size() < n) drop_bound_ = std::min(drop_bound_, keep_limit + 1);

  ExtremeSet next;
  next.total_seen = extremes_.total_seen;
  next.points.resize(static_cast<Eigen::Index>(keep.size()), dim_);
  next.seq.reserve(keep.size());
  next.scores.reserve(keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    next.points.row(static_cast<Eigen::Index>(r)) = w.row(keep[r]);
    next.seq.push_back(seq[static_cast<std::size_t>(keep[r])]);
    next.scores.push_back(n + 1 - depth[static_cast<std::size_t>(keep[r])]);
  }
  extremes_ = std::move(next);

  if (verify_) verify_against_all();
}

void OnlineBghm::verify_against_all() {
  const auto total = static_cast<std::size_t>(all_points_.rows());
  std::vector<std::uint64_t> all_seq(total);
  for (std::size_t i = 0; i < total; ++i) all_seq[i] = i;
  const auto global = shallow_depths(all_points_, all_seq, total);
  std::vector<bool> held(total, false);
  for (auto s : extremes_.seq) held[static_cast<std::size_t>(s)] = true;
  const auto local = shallow_depths(extremes_.points, extremes_.seq, extremes_.seq.size());
  for (std::size_t i = 0; i < total; ++i) {
    if (global[i] < drop_bound_ && !held[i]) {
      throw std::logic_error("extreme-set invariant violated: point " + std::to_string(i) + " of depth " +
                             std::to_string(global[i]) + " was dropped");
    }
  }
  for (std::size_t r = 0; r < extremes_.seq.size(); ++r) {
    const auto g = global[static_cast<std::size_t>(extremes_.seq[r])];
    if (g < drop_bound_ && local[r] != g) {
      throw std::logic_error("extreme-set invariant violated: retained depth differs from global depth");
    }
  }
  ++verified_;
}

BghmResult OnlineBghm::finish() const {
  const std::size_t m = extremes_.total_seen;
  if (m < total_m_) {
    throw Error(ErrorKind::StreamExhausted,
                "stream ended after " + std::to_string(m) + " of " + std::to_string(total_m_) + " points");
  }
  const auto& e = extremes_;
  const auto n = static_cast<std::size_t>(e.points.rows());
  const auto depth = shallow_depths(e.points, e.seq, n);
  std::vector<std::uint32_t> sorted(depth.begin(), depth.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(q_ - 1), sorted.end());
  const std::size_t tau = sorted[q_ - 1];
  if (tau >= drop_bound_) {
    throw Error(ErrorKind::InexactExtremeSet, "final depth " + std::to_string(tau) + " reaches the drop bound " +
                                                  std::to_string(drop_bound_));
  }

  BghmResult out;
  out.samples = m;
  out.k = m - floor_alpha_count(alpha_, m);
  out.j_star = m + 1 - tau;
  out.t_hat = 2.0 * static_cast<double>(tau) / static_cast<double>(m + 1);
  const auto d = static_cast<std::size_t>(dim_);
  out.rect.lower.resize(d);
  out.rect.upper.resize(d);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t r = 0; r < n; ++r) column[r] = e.points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(tau - 1), column.end());
    out.rect.lower[j] = column[tau - 1];
    std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(n - tau), column.end());
    out.rect.upper[j] = column[n - tau];
  }
  out.rect.level_t = out.t_hat;
  out.rect.nominal_alpha = alpha_;
  out.rect.method = Method::OnlineBghm;
  return out;
}

}  // namespace credrect
