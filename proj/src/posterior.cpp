#include "credrect/posterior.hpp"

#include "credrect/error.hpp"

namespace credrect {

void PosteriorSpec::validate() const {
  if (!(dof > static_cast<double>(p() + 1))) {
    throw Error(ErrorKind::InvalidDof, "posterior dof must exceed p + 1");
  }
  (void)cholesky(scale);
}

PriorSpec default_prior(const TimeseriesMatrix& x) {
  if (x.rows() < 2) throw Error(ErrorKind::InvalidArgument, "default prior needs at least 2 observations");
  const Eigen::Index p = x.cols();
  Vector var(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double mean = x.col(j).mean();
    var(j) = (x.col(j).array() - mean).square().sum() / static_cast<double>(x.rows() - 1);
    if (!(var(j) >= 1e-12)) {
      throw Error(ErrorKind::DegenerateColumn, "column " + std::to_string(j) + " has variance " + std::to_string(var(j)));
    }
  }
  return PriorSpec{SymMatrix::diagonal(var), static_cast<double>(p + 2)};
}

namespace {

SymMatrix add_gram(const SymMatrix& scale, const TimeseriesMatrix& x) {
  if (x.cols() != scale.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "data has " + std::to_string(x.cols()) + " columns, prior has dimension " +
                                                  std::to_string(scale.dim()));
  }
  Matrix s = scale.matrix();
  const Eigen::Index p = s.rows();
  // Lower triangle computed once and mirrored so the result is exactly symmetric.
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = j; i < p; ++i) {
      const double v = s(i, j) + x.col(i).dot(x.col(j));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return SymMatrix(std::move(s));
}

}  // namespace

PosteriorSpec posterior_update(const PriorSpec& prior, const TimeseriesMatrix& x) {
  return PosteriorSpec{add_gram(prior.scale, x), prior.dof + static_cast<double>(x.rows()), x.rows()};
}

PosteriorSpec posterior_update(const PosteriorSpec& posterior, const TimeseriesMatrix& x) {
  return PosteriorSpec{add_gram(posterior.scale, x), posterior.dof + static_cast<double>(x.rows()),
                       posterior.n + x.rows()};
}

CorrBatchStream::CorrBatchStream(const PosteriorSpec& posterior, std::size_t batch_size, std::size_t n_batches,
                                 std::uint64_t seed)
    : source_(posterior.scale, posterior.dof),
      plan_{seed, StreamDomain::Estimation, batch_size * n_batches, batch_size} {
  if (batch_size == 0) throw Error(ErrorKind::InvalidArgument, "batch_size must be >= 1");
}

CorrBatchStream CorrBatchStream::with_total(const PosteriorSpec& posterior, std::size_t total,
                                            std::size_t batch_size, std::uint64_t seed) {
  CorrBatchStream stream(posterior, batch_size, 0, seed);
  stream.plan_.total = total;
  return stream;
}

std::optional<SampleBlock> CorrBatchStream::next() {
  if (next_batch_ >= plan_.batch_count()) return std::nullopt;
  return draw_batch(source_, plan_, next_batch_++);
}

CorrBatchStream sample_corr_batches(const PosteriorSpec& posterior, std::size_t batch_size, std::size_t n_batches,
                                    std::uint64_t seed) {
  return CorrBatchStream(posterior, batch_size, n_batches, seed);
}

}  // namespace credrect
