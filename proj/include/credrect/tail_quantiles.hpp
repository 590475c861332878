#pragma once

#include "credrect/types.hpp"

#include <cstddef>
#include <vector>

namespace credrect {

/// Bounded-memory marginal tails for a contiguous range of coordinates: keeps
/// the `capacity` smallest and `capacity` largest values seen per coordinate,
/// which is all that is needed for order statistics of rank <= capacity from
/// either end.
class MarginalTails {
 public:
  MarginalTails(Eigen::Index first_coord, Eigen::Index n_coords, std::size_t capacity);

  /// Consumes columns [first_coord, first_coord + n_coords) of the batch.
  /// Parallel over coordinates.
  void update(const SampleBlock& batch);

  /// Sorts the buffers; must be called before any order-statistic query.
  void finalize();

  std::size_t seen() const noexcept { return seen_; }
  std::size_t capacity() const noexcept { return capacity_; }
  Eigen::Index n_coords() const noexcept { return n_coords_; }

  /// k-th smallest / k-th largest (1-based) of local coordinate j.
  double kth_smallest(Eigen::Index j, std::size_t k) const;
  double kth_largest(Eigen::Index j, std::size_t k) const;

  /// Values currently held for local coordinate j (both tails).
  std::size_t retained(Eigen::Index j) const;

 /// Buffers grow to this multiple of the capacity before being cut back.
  static constexpr std::size_t kGrowth = 3;
  /// Peak bytes held per coordinate (both tails).
  static std::size_t bytes_per_coordinate(std::size_t capacity) noexcept {
    return 2 * kGrowth * capacity * sizeof(double);
  }

 private:
  void prune_low(std::size_t j);
  void prune_high(std::size_t j);

  Eigen::Index first_;
  Eigen::Index n_coords_;
  std::size_t capacity_;
  std::size_t seen_ = 0;
  bool finalized_ = false;
  // Values at or beyond a cut cannot enter that tail. Cuts start at +/-inf so
  // everything is kept until the first prune.
  std::vector<std::vector<double>> low_;
  std::vector<std::vector<double>> high_;
  std::vector<double> low_cut_;
  std::vector<double> high_cut_;
};

}  // namespace credrect
