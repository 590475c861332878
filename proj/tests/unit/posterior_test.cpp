#include "credrect/error.hpp"
#include "credrect/posterior.hpp"
#include "credrect/random.hpp"
#include "credrect/vech.hpp"

#include <gtest/gtest.h>

namespace credrect {
namespace {

TEST(DefaultPrior, UnitVarianceColumns) {
  Matrix x(4, 3);
  // Each column has mean 0 and sample variance (n - 1 denominator) 1.
  const double a = std::sqrt(0.75);
  x << a, a, -a, a, -a, a, -a, a, a, -a, -a, -a;
  const PriorSpec prior = default_prior(x);
  EXPECT_EQ(prior.dof, 5.0);
  EXPECT_TRUE(prior.scale.matrix().isApprox(Matrix::Identity(3, 3), 1e-14));
}

TEST(DefaultPrior, VariancesOnDiagonal) {
  Matrix x(3, 2);
  // Column 0: {-1, 0, 1} + 5 has variance 1; scale by sqrt(2) and sqrt(3).
  x << 5 - std::sqrt(2.0), -std::sqrt(3.0), 5, 0, 5 + std::sqrt(2.0), std::sqrt(3.0);
  const PriorSpec prior = default_prior(x);
  EXPECT_EQ(prior.dof, 4.0);
  EXPECT_NEAR(prior.scale(0, 0), 2.0, 1e-12);
  EXPECT_NEAR(prior.scale(1, 1), 3.0, 1e-12);
  EXPECT_EQ(prior.scale(0, 1), 0.0);
}

TEST(DefaultPrior, ConstantColumnIsDegenerate) {
  Matrix x(5, 2);
  x << 1, 2, 2, 2, 3, 2, 4, 2, 5, 2;
  try {
    (void)default_prior(x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateColumn);
  }
}

TEST(PosteriorUpdate, EmptyDataLeavesPrior) {
  const PriorSpec prior{SymMatrix::identity(3), 5.0};
  const PosteriorSpec post = posterior_update(prior, Matrix(0, 3));
  EXPECT_EQ(post.scale, prior.scale);
  EXPECT_EQ(post.dof, prior.dof);
  EXPECT_EQ(post.n, 0);
}

TEST(PosteriorUpdate, SingleObservation) {
  Matrix x(1, 2);
  x << 1, 0;
  const PosteriorSpec post = posterior_update(PriorSpec{SymMatrix::identity(2), 4.0}, x);
  Matrix expected(2, 2);
  expected << 2, 0, 0, 1;
  EXPECT_EQ(post.scale.matrix(), expected);
  EXPECT_EQ(post.dof, 5.0);
  EXPECT_EQ(post.n, 1);
}

TEST(PosteriorUpdate, SequentialEqualsStacked) {
  const Matrix x = Matrix::Random(30, 4);
  const Matrix y = Matrix::Random(20, 4);
  Matrix xy(50, 4);
  xy << x, y;
  const PriorSpec prior = default_prior(xy);
  const PosteriorSpec seq = posterior_update(posterior_update(prior, x), y);
  const PosteriorSpec once = posterior_update(prior, xy);
  EXPECT_TRUE(seq.scale.matrix().isApprox(once.scale.matrix(), 1e-13));
  EXPECT_EQ(seq.dof, once.dof);
  EXPECT_EQ(seq.n, once.n);
}

TEST(PosteriorUpdate, RejectsDimensionMismatch) {
  EXPECT_THROW(posterior_update(PriorSpec{SymMatrix::identity(3), 5.0}, Matrix::Random(4, 2)), Error);
}

TEST(CorrBatchStream, CountsBatchesAndDraws) {
  const PosteriorSpec post{SymMatrix::identity(4), 20.0, 14};
  auto stream = sample_corr_batches(post, 100, 5, 7);
  std::size_t total = 0;
  std::size_t batches = 0;
  while (auto b = stream.next()) {
    EXPECT_EQ(b->cols(), 6);
    total += static_cast<std::size_t>(b->rows());
    ++batches;
  }
  EXPECT_EQ(batches, 5u);
  EXPECT_EQ(total, 500u);
  EXPECT_FALSE(stream.next().has_value());
}

TEST(CorrBatchStream, ExactTotalWithShortLastBatch) {
  const PosteriorSpec post{SymMatrix::identity(3), 20.0, 14};
  auto stream = CorrBatchStream::with_total(post, 250, 100, 7);
  std::vector<Eigen::Index> sizes;
  while (auto b = stream.next()) sizes.push_back(b->rows());
  EXPECT_EQ(sizes, (std::vector<Eigen::Index>{100, 100, 50}));
}

TEST(CorrBatchStream, SymmetricUnderDiagonalScale) {
  const PosteriorSpec post{SymMatrix::identity(2), 500.0, 497};
  auto stream = sample_corr_batches(post, 1000, 20, 3);
  double sum = 0.0;
  std::size_t n = 0;
  while (auto b = stream.next()) {
    sum += b->sum();
    n += static_cast<std::size_t>(b->rows());
  }
  EXPECT_NEAR(sum / static_cast<double>(n), 0.0, 0.01);
}

TEST(CorrBatchStream, SameSeedSameStream) {
  const PosteriorSpec post{SymMatrix::identity(5), 30.0, 23};
  auto a = sample_corr_batches(post, 64, 3, 42);
  auto b = sample_corr_batches(post, 64, 3, 42);
  auto c = sample_corr_batches(post, 64, 3, 43);
  while (auto ba = a.next()) {
    const auto bb = b.next();
    const auto bc = c.next();
    EXPECT_EQ(*ba, *bb);
    EXPECT_NE(*ba, *bc);
  }
}

TEST(DefaultPrior, PriorCorrelationMeanIsIdentity) {
  Rng rng(5);
  const Matrix x = sample_mvn(Vector::Zero(4), Matrix::Identity(4, 4) * 2.0, 50, rng);
  const PriorSpec prior = default_prior(x);
  const PosteriorSpec as_posterior{prior.scale, prior.dof, 0};
  auto stream = sample_corr_batches(as_posterior, 10000, 10, 17);
  Vector mean = Vector::Zero(6);
  std::size_t n = 0;
  while (auto b = stream.next()) {
    mean += b->colwise().sum().transpose();
    n += static_cast<std::size_t>(b->rows());
  }
  mean /= static_cast<double>(n);
  EXPECT_LT(mean.cwiseAbs().maxCoeff(), 0.02);
}

}  // namespace
}  // namespace credrect
