#include "credrect/tail_quantiles.hpp"

#include "credrect/error.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>

namespace credrect {

MarginalTails::MarginalTails(Eigen::Index first_coord, Eigen::Index n_coords, std::size_t capacity)
    : first_(first_coord), n_coords_(n_coords), capacity_(capacity) {
  if (capacity == 0) throw Error(ErrorKind::InvalidArgument, "tail capacity must be >= 1");
  const auto n = static_cast<std::size_t>(n_coords);
  low_.resize(n);
  high_.resize(n);
  low_cut_.assign(n, std::numeric_limits<double>::infinity());
  high_cut_.assign(n, -std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < n; ++j) {
    low_[j].reserve(kGrowth * capacity);
    high_[j].reserve(kGrowth * capacity);
  }
}

// After a prune the cut is the capacity-th smallest value kept. A later value
// equal to the cut cannot change any of the first `capacity` order
// statistics, so entry needs a strict comparison.
void MarginalTails::prune_low(std::size_t j) {
  auto& v = low_[j];
  if (v.size() <= capacity_) return;
  auto nth = v.begin() + static_cast<std::ptrdiff_t>(capacity_ - 1);
  std::nth_element(v.begin(), nth, v.end());
  v.resize(capacity_);
  low_cut_[j] = v.back();
}

void MarginalTails::prune_high(std::size_t j) {
  auto& v = high_[j];
  if (v.size() <= capacity_) return;
  auto nth = v.begin() + static_cast<std::ptrdiff_t>(capacity_ - 1);
  std::nth_element(v.begin(), nth, v.end(), std::greater<>());
  v.resize(capacity_);
  high_cut_[j] = v.back();
}

void MarginalTails::update(const SampleBlock& batch) {
  if (finalized_) throw Error(ErrorKind::InvalidArgument, "tails already finalized");
  if (batch.cols() < first_ + n_coords_) throw Error(ErrorKind::DimensionMismatch, "batch is narrower than tail range");
  const Eigen::Index rows = batch.rows();
  const std::size_t limit = kGrowth * capacity_;
  // Tiles of adjacent coordinates keep the row-major reads contiguous; each
  // tile is owned by one thread.
  constexpr std::size_t kTile = 32;
  const auto n = static_cast<std::size_t>(n_coords_);
  const auto tiles = static_cast<std::int64_t>((n + kTile - 1) / kTile);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < tiles; ++t) {
    const std::size_t j0 = static_cast<std::size_t>(t) * kTile;
    const std::size_t j1 = std::min(n, j0 + kTile);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double* row = batch.row(r).data() + first_;
      for (std::size_t j = j0; j < j1; ++j) {
        const double v = row[j];
        if (v < low_cut_[j]) {
          low_[j].push_back(v);
          if (low_[j].size() >= limit) prune_low(j);
        }
        if (v > high_cut_[j]) {
          high_[j].push_back(v);
          if (high_[j].size() >= limit) prune_high(j);
        }
      }
    }
  }
  seen_ += static_cast<std::size_t>(rows);
}

void MarginalTails::finalize() {
  if (finalized_) return;
  for (std::size_t j = 0; j < low_.size(); ++j) {
    prune_low(j);
    prune_high(j);
    std::sort(low_[j].begin(), low_[j].end());
    std::sort(high_[j].begin(), high_[j].end(), std::greater<>());
  }
  finalized_ = true;
}

double MarginalTails::kth_smallest(Eigen::Index j, std::size_t k) const {
  if (!finalized_) throw Error(ErrorKind::InvalidArgument, "tails not finalized");
  const auto& v = low_.at(static_cast<std::size_t>(j));
  if (k == 0 || k > v.size()) throw Error(ErrorKind::InsufficientSamples, "order statistic outside retained tail");
  return v[k - 1];
}

double MarginalTails::kth_largest(Eigen::Index j, std::size_t k) const {
  if (!finalized_) throw Error(ErrorKind::InvalidArgument, "tails not finalized");
  const auto& v = high_.at(static_cast<std::size_t>(j));
  if (k == 0 || k > v.size()) throw Error(ErrorKind::InsufficientSamples, "order statistic outside retained tail");
  return v[k - 1];
}

std::size_t MarginalTails::retained(Eigen::Index j) const {
  const auto jj = static_cast<std::size_t>(j);
  return low_.at(jj).size() + high_.at(jj).size();
}

}  // namespace credrect
