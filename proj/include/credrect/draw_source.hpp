#pragma once

#include "credrect/linalg.hpp"
#include "credrect/random.hpp"
#include "credrect/types.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

namespace credrect {

/// Anything the rectangle estimators can draw joint samples from.
class DrawSource {
 public:
  virtual ~DrawSource() = default;
  virtual Eigen::Index dim() const = 0;
  /// Overwrites every row of out with an independent draw; out.cols() == dim().
  virtual void fill(Rng& rng, SampleBlock& out) const = 0;
};

/// N(mean, cov).
class GaussianSource final : public DrawSource {
 public:
  GaussianSource(Vector mean, const SymMatrix& cov);
  Eigen::Index dim() const override { return mean_.size(); }
  void fill(Rng& rng, SampleBlock& out) const override;

 private:
  Vector mean_;
  Matrix factor_;
};

/// vech0 of the correlation of S ~ IW(scale, dof).
class CorrelationPosteriorSource final : public DrawSource {
 public:
  CorrelationPosteriorSource(const SymMatrix& scale, double dof);
  Eigen::Index dim() const override { return p_ * (p_ - 1) / 2; }
  Eigen::Index matrix_dim() const noexcept { return p_; }
  void fill(Rng& rng, SampleBlock& out) const override;

 private:
  Eigen::Index p_;
  InverseWishartSampler sampler_;
};

/// How a run of `total` draws is cut into batches. Batch b always comes from
/// substream stream_id(domain, b) of `seed`, whichever thread produces it.
struct DrawPlan {
  std::uint64_t seed = 0;
  StreamDomain domain = StreamDomain::Estimation;
  std::size_t total = 0;
  std::size_t batch_size = 4096;

  std::size_t batch_count() const noexcept {
    return batch_size == 0 ? 0 : (total + batch_size - 1) / batch_size;
  }
  std::size_t batch_rows(std::size_t b) const noexcept {
    const std::size_t start = b * batch_size;
    return start >= total ? 0 : std::min(batch_size, total - start);
  }
};

SampleBlock draw_batch(const DrawSource& source, const DrawPlan& plan, std::size_t batch);

/// Batches [first, first + count) of the plan, produced in parallel.
std::vector<SampleBlock> draw_batches(const DrawSource& source, const DrawPlan& plan, std::size_t first,
                                      std::size_t count);

/// All draws of the plan in one resident block (parallel over batches).
SampleBlock draw_all(const DrawSource& source, const DrawPlan& plan);

}  // namespace credrect
