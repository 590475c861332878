#pragma once

#include "credrect/draw_source.hpp"
#include "credrect/linalg.hpp"
#include "credrect/types.hpp"

#include <cstdint>
#include <optional>

namespace credrect {

/// Inverse-Wishart prior IW(scale, dof) on the covariance.
struct PriorSpec {
  SymMatrix scale;
  double dof = 0.0;

  Eigen::Index p() const noexcept { return scale.dim(); }
};

/// IW(scale + X^T X, dof + n) for the zero-mean Gaussian likelihood.
struct PosteriorSpec {
  SymMatrix scale;
  double dof = 0.0;
  Eigen::Index n = 0;

  Eigen::Index p() const noexcept { return scale.dim(); }
  Eigen::Index d() const noexcept { return p() * (p() - 1) / 2; }

  /// Throws unless scale is positive-definite and dof > p + 1.
  void validate() const;
};

/// Per-column sample variances (mean-centred, n - 1 denominator) on the
/// diagonal and dof = p + 2, so E[Sigma] = scale and E[C] = I.
PriorSpec default_prior(const TimeseriesMatrix& x);

PosteriorSpec posterior_update(const PriorSpec& prior, const TimeseriesMatrix& x);

/// Sequential update; posterior_update(posterior_update(prior, X), Y) equals
/// the update with the stacked data.
PosteriorSpec posterior_update(const PosteriorSpec& posterior, const TimeseriesMatrix& x);

/// Lazy stream of vech0 correlation draws. Batch b comes from substream b of
/// the seed; nothing is retained after a batch is handed out.
class CorrBatchStream {
 public:
  CorrBatchStream(const PosteriorSpec& posterior, std::size_t batch_size, std::size_t n_batches, std::uint64_t seed);

  /// Exactly `total` draws; the last batch is short when batch_size does not divide it.
  static CorrBatchStream with_total(const PosteriorSpec& posterior, std::size_t total, std::size_t batch_size,
                                    std::uint64_t seed);

  std::optional<SampleBlock> next();

  std::size_t total() const noexcept { return plan_.total; }
  std::size_t remaining_batches() const noexcept { return plan_.batch_count() - next_batch_; }
  const CorrelationPosteriorSource& source() const noexcept { return source_; }

 private:
  CorrelationPosteriorSource source_;
  DrawPlan plan_;
  std::size_t next_batch_ = 0;
};

CorrBatchStream sample_corr_batches(const PosteriorSpec& posterior, std::size_t batch_size, std::size_t n_batches,
                                    std::uint64_t seed);

}  // namespace credrect
