#pragma once

#include "credrect/bghm.hpp"
#include "credrect/error.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace credrect {

/// Retained extreme points of a stream, with the score each had within the
/// merge set (retained points plus the batch) that last kept it, and the
/// number of points seen so far.
struct ExtremeSet {
  SampleBlock points;
  std::vector<std::uint64_t> seq;
  std::vector<std::size_t> scores;
  std::size_t total_seen = 0;
};

/// Streaming BGHM. Produces the same rectangle and t_hat as bghm_rectangle
/// with k = M - floor(alpha M) on the concatenated stream, while holding only
/// the shallowest points (smallest depth, i.e. largest score) plus one batch.
///
/// Retention works by depth threshold: after each merge every point whose
/// depth within (retained ∪ batch) exceeds tau + slack(tau) is dropped, tau
/// being the q-th smallest depth, q = floor(alpha M) + 1. Depth within a
/// subset never exceeds depth within the full stream, so every point whose
/// final depth is below the smallest threshold ever applied is still held, with
/// its exact depth. finish() checks that the final tau lies below that bound
/// and throws InexactExtremeSet otherwise.
class OnlineBghm {
 public:
  OnlineBghm(Eigen::Index dim, double alpha, std::size_t total_m, bool verify_merges = false);

  void push(const SampleBlock& batch);
  BghmResult finish() const;

  const ExtremeSet& extremes() const noexcept { return extremes_; }
  std::size_t peak_retained() const noexcept { return peak_; }
  std::size_t retention_target() const noexcept { return q_; }
  /// Number of merges checked by brute force (verify_merges only).
  std::size_t verified_merges() const noexcept { return verified_; }

  /// Extra depth levels kept above the q-th smallest depth.
  static std::size_t slack(std::size_t tau) noexcept { return std::max<std::size_t>(2, (tau + 3) / 4); }

 private:
  std::vector<std::uint32_t> depths_up_to_quota(const SampleBlock& w, const std::vector<std::uint64_t>& seq,
                                                std::size_t& tau) const;
  void verify_against_all();

  Eigen::Index dim_;
  double alpha_;
  std::size_t total_m_;
  std::size_t q_;
  bool verify_;
  ExtremeSet extremes_;
  std::size_t drop_bound_ = std::numeric_limits<std::size_t>::max();
  std::size_t depth_hint_ = 1;
  std::size_t peak_ = 0;
  std::size_t verified_ = 0;
  SampleBlock all_points_;  // verify_merges only
};

/// Drains a batch stream (anything with next() -> std::optional<SampleBlock>).
template <typename Stream>
BghmResult online_bghm(Stream& stream, double alpha, std::size_t total_m, bool verify_merges = false,
                       std::size_t* peak_retained = nullptr) {
  std::optional<OnlineBghm> online;
  while (auto batch = stream.next()) {
    if (!online) online.emplace(batch->cols(), alpha, total_m, verify_merges);
    online->push(*batch);
    if (online->extremes().total_seen >= total_m) break;
  }
  if (!online) throw Error(ErrorKind::StreamExhausted, "stream yielded no batches");
  if (peak_retained != nullptr) *peak_retained = online->peak_retained();
  return online->finish();
}

}  // namespace credrect
