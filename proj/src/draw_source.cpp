#include "credrect/draw_source.hpp"

#include "credrect/error.hpp"


namespace credrect {

GaussianSource::GaussianSource(Vector mean, const SymMatrix& cov)
    : mean_(std::move(mean)), factor_(cholesky(cov)) {
  if (cov.dim() != mean_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "covariance does not match mean length");
  }
}

void GaussianSource::fill(Rng& rng, SampleBlock& out) const {
  if (out.cols() != dim()) throw Error(ErrorKind::DimensionMismatch, "block width != source dimension");
  out = sample_mvn(mean_, factor_, static_cast<std::size_t>(out.rows()), rng);
}

CorrelationPosteriorSource::CorrelationPosteriorSource(const SymMatrix& scale, double dof)
    : p_(scale.dim()), sampler_(scale, dof) {
  if (p_ < 2) throw Error(ErrorKind::InvalidArgument, "correlation posterior needs p >= 2");
}

void CorrelationPosteriorSource::fill(Rng& rng, SampleBlock& out) const {
  if (out.cols() != dim()) throw Error(ErrorKind::DimensionMismatch, "block width != source dimension");
  const auto d = static_cast<std::size_t>(dim());
  InverseWishartSampler::Workspace ws;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    sampler_.draw_corr_vech0(rng, std::span<double>(out.row(r).data(), d), ws);
  }
}

SampleBlock draw_batch(const DrawSource& source, const DrawPlan& plan, std::size_t batch) {
  SampleBlock out(static_cast<Eigen::Index>(plan.batch_rows(batch)), source.dim());
  Rng rng(plan.seed, stream_id(plan.domain, batch));
  source.fill(rng, out);
  return out;
}

std::vector<SampleBlock> draw_batches(const DrawSource& source, const DrawPlan& plan, std::size_t first,
                                      std::size_t count) {
  std::vector<SampleBlock> out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = draw_batch(source, plan, first + static_cast<std::size_t>(i));
  }
  return out;
}

SampleBlock draw_all(const DrawSource& source, const DrawPlan& plan) {
  SampleBlock all(static_cast<Eigen::Index>(plan.total), source.dim());
  const auto batches = static_cast<std::int64_t>(plan.batch_count());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < batches; ++b) {
    const auto bi = static_cast<std::size_t>(b);
    all.middleRows(static_cast<Eigen::Index>(bi * plan.batch_size), static_cast<Eigen::Index>(plan.batch_rows(bi))) =
        draw_batch(source, plan, bi);
  }
  return all;
}

}  // namespace credrect
