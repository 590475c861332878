#pragma once

#include "credrect/credible_rectangle.hpp"
#include "credrect/linalg.hpp"
#include "credrect/rectangle.hpp"
#include "credrect/support.hpp"

#include <cstdint>
#include <vector>

namespace credrect {

/// Sparse correlation matrix with its non-zero off-diagonal pattern.
struct GroundTruth {
  SymMatrix sigma0;
  std::vector<Edge> support;  // vech0 order
  double density = 0.0;       // |support| / (p(p-1)/2)
};

/// rho on every off-diagonal entry, 1 on the diagonal. OutOfRange unless
/// -1/(dim-1) < rho < 1.
SymMatrix make_equicorrelation(std::size_t dim, double rho);

/// Block one-factor correlation matrix: variables are split into blocks of
/// random sizes, within a block C = l l^T + diag(1 - l^2) with loadings
/// |l| ~ U[0.5, 0.85] of random sign, and different blocks are uncorrelated.
/// Block sizes are redrawn until the realized density is within 20% of the
/// target; minimum eigenvalue is checked to be >= 0.05.
GroundTruth make_sparse_pd(std::size_t p, double target_density, std::uint64_t seed);

/// Accuracy in percent: share of the p(p-1)/2 pairs classified correctly.
double support_accuracy(const SupportEstimate& est, const GroundTruth& truth);
/// True when the estimate contains an edge absent from the truth.
bool has_false_positive(const SupportEstimate& est, const GroundTruth& truth);

struct BenchmarkOptions {
  double alpha = 0.05;
  std::size_t replications = 200;
  std::uint64_t seed = 0;
  /// Posterior draws per replication; 0 means ceil(20 d / alpha), the least
  /// that gives the Bonferroni tails ten draws each.
  std::size_t samples = 0;
  std::size_t batch_size = 4096;
  std::vector<SupportMethod> methods = {SupportMethod::BayesOptimal, SupportMethod::BayesBonferroni,
                                        SupportMethod::MtBonferroni, SupportMethod::MtHolm};
};

struct MethodSummary {
  SupportMethod method = SupportMethod::BayesOptimal;
  double acc_mean = 0.0;  // percent
  double acc_sd = 0.0;    // percent, S - 1 denominator
  double fwer_hat = 0.0;  // percent of replications with a false positive
  std::size_t replications = 0;
};

struct SimulationReport {
  double density = 0.0;
  std::size_t n = 0;
  std::vector<MethodSummary> rows;
  std::vector<std::uint64_t> seeds;  // one per replication
};

/// Replication r simulates n rows of N(0, sigma0) and fits the default-prior
/// posterior, both from seeds derived from (options.seed, r); every requested
/// method is scored on the same data. Parallel over replications, with a
/// result independent of the thread count.
SimulationReport run_support_benchmark(const GroundTruth& truth, std::size_t n, const BenchmarkOptions& options);

struct GridOptions {
  double alpha = 0.05;
  std::size_t replications = 20;
  std::uint64_t seed = 0;
  std::size_t samples = 0;  // 0: ceil(20 d / alpha)
  std::size_t validation_samples = 20000;
  std::size_t grid_size = 16;
  std::size_t batch_size = 4096;
};

struct GridCell {
  std::size_t n = 0;
  std::size_t p = 0;
  double rho = 0.0;
  double m_l = 0.0;
  Method method = Method::Bghm;
};

/// Mean interval length of the 1 - alpha rectangle for the correlations of
/// IW_p(Sigma(rho), p + 2 + n), averaged over replications, for every cell of
/// the product n_values x p_values x rho_values (n slowest).
std::vector<GridCell> uncertainty_grid(const std::vector<std::size_t>& n_values,
                                       const std::vector<std::size_t>& p_values,
                                       const std::vector<double>& rho_values, const GridOptions& options);

}  // namespace credrect
