#include "credrect/random.hpp"

#include "credrect/error.hpp"

#include <boost/random/uniform_real_distribution.hpp>

#include <algorithm>
#include <cmath>

namespace credrect {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(make_engine(seed, stream)) {}

double Rng::chi_square(double dof) {
  std::gamma_distribution<double> gamma(dof / 2.0, 2.0);
  return gamma(engine_);
}

double Rng::uniform(double lo, double hi) {
  boost::random::uniform_real_distribution<double> u(lo, hi);
  return u(engine_);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SampleBlock sample_mvn(const Vector& mean, const Matrix& cov_factor, std::size_t count, Rng& rng) {
  const Eigen::Index p = mean.size();
  if (cov_factor.rows() != p || cov_factor.cols() != p) {
    throw Error(ErrorKind::DimensionMismatch, "covariance factor does not match mean length");
  }
  SampleBlock out(static_cast<Eigen::Index>(count), p);
  Vector z(p);
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    for (Eigen::Index i = 0; i < p; ++i) z(i) = rng.normal();
    out.row(r) = (mean + cov_factor.triangularView<Eigen::Lower>() * z).transpose();
  }
  return out;
}

InverseWishartSampler::InverseWishartSampler(const SymMatrix& scale, double dof)
    : p_(scale.dim()), dof_(dof) {
  if (p_ < 1) throw Error(ErrorKind::InvalidArgument, "inverse-Wishart needs dimension >= 1");
  if (!(dof > static_cast<double>(p_ - 1))) {
    throw Error(ErrorKind::InvalidDof, "dof must exceed p - 1");
  }
  scale_factor_ = cholesky(scale);
}

// With Z = B B^T ~ W(I, dof) and B upper triangular (reversed Bartlett:
// B_ii^2 ~ chi2(dof - p + i), i = 1..p, normal entries above the diagonal),
// S = L Z^{-1} L^T ~ IW(L L^T, dof). S = G G^T with G = L B^{-T}; G is lower
// triangular and row i solves g_i B^T = l_i by back substitution,
//   g_ic = (l_ic - sum_{k=c+1..i} g_ik B_ck) / B_cc,
// touching only the nonzero parts of both factors.
void InverseWishartSampler::draw_factor(Rng& rng, Workspace& ws) const {
  RowMatrix& bt = ws.bt;
  RowMatrix& g = ws.g;
  if (bt.rows() != p_) {
    bt.setZero(p_, p_);
    g.setZero(p_, p_);
  }
  for (Eigen::Index i = 0; i < p_; ++i) {
    bt(i, i) = std::sqrt(rng.chi_square(dof_ - static_cast<double>(p_) + static_cast<double>(i) + 1.0));
    for (Eigen::Index j = i + 1; j < p_; ++j) bt(j, i) = rng.normal();
  }
  // Column form of the same recursion: once g_ic is final, subtract its
  // contribution from every earlier column of the row (row c of B^T holds
  // B_kc contiguously). The diagonal is stored inverted.
  for (Eigen::Index c = 0; c < p_; ++c) bt(c, c) = 1.0 / bt(c, c);
  for (Eigen::Index i = 0; i < p_; ++i) {
    double* gi = g.row(i).data();
    for (Eigen::Index c = 0; c <= i; ++c) gi[c] = scale_factor_(i, c);
    for (Eigen::Index c = i; c >= 0; --c) {
      const double v = gi[c] * bt(c, c);
      gi[c] = v;
      const double* col = bt.row(c).data();
      for (Eigen::Index k = 0; k < c; ++k) gi[k] -= v * col[k];
    }
  }
}

SymMatrix InverseWishartSampler::draw(Rng& rng) const {
  Workspace ws;
  draw_factor(rng, ws);
  const RowMatrix& g = ws.g;
  Matrix s(p_, p_);
  for (Eigen::Index i = 0; i < p_; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = g.row(i).head(j + 1).dot(g.row(j).head(j + 1));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return SymMatrix(std::move(s));
}

void InverseWishartSampler::draw_corr_vech0(Rng& rng, std::span<double> out) const {
  Workspace ws;
  draw_corr_vech0(rng, out, ws);
}

void InverseWishartSampler::draw_corr_vech0(Rng& rng, std::span<double> out, Workspace& ws) const {
  if (out.size() != static_cast<std::size_t>(p_ * (p_ - 1) / 2)) {
    throw Error(ErrorKind::LengthMismatch, "output span does not have length p(p-1)/2");
  }
  draw_factor(rng, ws);
  const RowMatrix& g = ws.g;
  ws.inv_sd.resize(p_);
  for (Eigen::Index i = 0; i < p_; ++i) ws.inv_sd(i) = 1.0 / g.row(i).head(i + 1).norm();
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < p_; ++i) {
    const auto gi = g.row(i).head(i + 1);
    for (Eigen::Index j = i + 1; j < p_; ++j) {
      // Row i of G has only i + 1 nonzeros.
      const double v = gi.dot(g.row(j).head(i + 1)) * ws.inv_sd(i) * ws.inv_sd(j);
      out[k++] = std::clamp(v, -1.0, 1.0);
    }
  }
}

std::vector<SymMatrix> sample_inverse_wishart(const SymMatrix& scale, double dof, std::size_t count,
                                              Rng& rng) {
  if (!(dof > static_cast<double>(scale.dim() - 1))) {
    throw Error(ErrorKind::InvalidDof, "dof must exceed p - 1");
  }
  InverseWishartSampler sampler(scale, dof);
  std::vector<SymMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.draw(rng));
  return out;
}

}  // namespace credrect
