#pragma once

#include "credrect/linalg.hpp"
#include "credrect/types.hpp"

#include <boost/random/normal_distribution.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace credrect {

/// Seeded generator addressed by (seed, stream). Distinct streams are
/// statistically independent, so batch b of a run can be produced by any
/// worker in any order and still match a sequential run bit for bit.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  double normal() { return normal_(engine_); }
  double chi_square(double dof);
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
};

/// Stream identifiers are namespaced so that, e.g., validation draws never
/// reuse the substreams of estimation draws under the same seed.
enum class StreamDomain : std::uint64_t {
  Estimation = 1,
  Validation = 2,
  Data = 3,
  Replication = 4,
  Auxiliary = 5,
};

constexpr std::uint64_t stream_id(StreamDomain domain, std::uint64_t index) {
  return (static_cast<std::uint64_t>(domain) << 40) + index;
}

/// Derives a fresh seed from a parent seed and an index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// count draws of mean + L z with z standard normal, one per row.
SampleBlock sample_mvn(const Vector& mean, const Matrix& cov_factor, std::size_t count, Rng& rng);

/// Inverse-Wishart IW(scale, dof) with density proportional to
/// |S|^{-(dof+p+1)/2} exp(-tr(scale S^{-1})/2), so E[S] = scale / (dof - p - 1).
class InverseWishartSampler {
 public:
  InverseWishartSampler(const SymMatrix& scale, double dof);

  Eigen::Index dim() const noexcept { return p_; }
  double dof() const noexcept { return dof_; }

  /// Scratch space reused across draws.
  struct Workspace {
    RowMatrix bt;  // transposed upper-triangular Bartlett factor
    RowMatrix g;  // lower-triangular G, S = G G^T
    Vector inv_sd;
  };

  SymMatrix draw(Rng& rng) const;

  /// Writes vech0(cov_to_corr(S)) for one draw S into out (length p(p-1)/2).
  void draw_corr_vech0(Rng& rng, std::span<double> out) const;
  void draw_corr_vech0(Rng& rng, std::span<double> out, Workspace& ws) const;

 private:
  void draw_factor(Rng& rng, Workspace& ws) const;

  Eigen::Index p_;
  double dof_;
  RowMatrix scale_factor_;
};

std::vector<SymMatrix> sample_inverse_wishart(const SymMatrix& scale, double dof, std::size_t count,
                                              Rng& rng);

}  // namespace credrect
