#include "credrect/simulation.hpp"

#include "credrect/credible_rectangle.hpp"
#include "credrect/comparison.hpp"
#include "credrect/draw_source.hpp"
#include "credrect/error.hpp"
#include "credrect/online_bghm.hpp"
#include "credrect/posterior.hpp"
#include "credrect/random.hpp"
#include "credrect/sliced_grid.hpp"
#include "credrect/tail_quantiles.hpp"
#include "credrect/vech.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

namespace credrect {
namespace {

constexpr int kMaxConstructionAttempts = 1000;
constexpr double kDensityTolerance = 0.2;
constexpr double kMinEigenvalue = 0.05;

std::size_t block_edges(std::size_t s) { return s * (s - 1) / 2; }

// Random block sizes (each >= 2) whose edge count lies in [lo, hi], or empty
// when this attempt overshoots.
std::vector<std::size_t> draw_block_sizes(std::size_t p, std::size_t lo, std::size_t hi, Rng& rng) {
  std::vector<std::size_t> sizes;
  std::size_t edges = 0;
  std::size_t used = 0;
  while (edges < lo) {
    std::size_t max_s = 1;
    while (max_s + 1 <= p - used && edges + block_edges(max_s + 1) <= hi) ++max_s;
    if (max_s < 2) return {};
    // Favour blocks that do not finish the budget in one step so that the
    // number of blocks varies between seeds.
    std::uniform_int_distribution<std::size_t> pick(2, max_s);
    const std::size_t s = pick(rng);
    sizes.push_back(s);
    edges += block_edges(s);
    used += s;
  }
  return sizes;
}

SymMatrix block_one_factor(std::size_t p, const std::vector<std::size_t>& sizes, Rng& rng) {
  Matrix c = Matrix::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  std::size_t start = 0;
  for (std::size_t s : sizes) {
    std::vector<double> load(s);
    for (auto& l : load) {
      l = rng.uniform(0.5, 0.85);
      if (rng.uniform(0.0, 1.0) < 0.5) l = -l;
    }
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = a + 1; b < s; ++b) {
        const auto i = static_cast<Eigen::Index>(start + a);
        const auto j = static_cast<Eigen::Index>(start + b);
        c(i, j) = load[a] * load[b];
        c(j, i) = c(i, j);
      }
    }
    start += s;
  }
  return SymMatrix(c);
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::size_t default_draws(std::size_t d, double alpha) {
  return static_cast<std::size_t>(std::ceil(20.0 * static_cast<double>(d) / alpha));
}

// Runs body(i) for i in [0, count) in parallel and rethrows the first error.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(credrect_parallel_for_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct ReplicationOutcome {
  std::vector<double> accuracy;
  std::vector<bool> false_positive;
};

// Optimal (streamed BGHM) and Bonferroni rectangles from one pass over the
// same posterior draws.
std::pair<QuantileRectangle, QuantileRectangle> bayes_rectangles(const PosteriorSpec& post, double alpha,
                                                                 std::size_t m, std::size_t batch_size,
                                                                 std::uint64_t seed) {
  const auto d = static_cast<std::size_t>(post.d());
  const double t_bonf = alpha / static_cast<double>(d);
  require_tail_samples(t_bonf, m);
  const std::size_t k = order_statistic_index(t_bonf / 2.0, m);

  auto stream = CorrBatchStream::with_total(post, m, batch_size, seed);
  OnlineBghm online(post.d(), alpha, m);
  MarginalTails tails(0, post.d(), k);
  while (auto batch = stream.next()) {
    online.push(*batch);
    tails.update(*batch);
  }
  tails.finalize();

  QuantileRectangle optimal = online.finish().rect;
  optimal.p = static_cast<std::size_t>(post.p());
  QuantileRectangle bonf;
  bonf.lower.resize(d);
  bonf.upper.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    bonf.lower[j] = tails.kth_smallest(static_cast<Eigen::Index>(j), k);
    bonf.upper[j] = tails.kth_largest(static_cast<Eigen::Index>(j), k);
  }
  bonf.level_t = t_bonf;
  bonf.nominal_alpha = alpha;
  bonf.method = Method::Bonferroni;
  bonf.p = optimal.p;
  return {std::move(optimal), std::move(bonf)};
}

}  // namespace

SymMatrix make_equicorrelation(std::size_t dim, double rho) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  const double lower = dim > 1 ? -1.0 / static_cast<double>(dim - 1) : -1.0;
  if (!(rho > lower && rho < 1.0)) throw Error(ErrorKind::OutOfRange, "rho outside (-1/(dim-1), 1)");
  Matrix c = Matrix::Constant(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim), rho);
  c.diagonal().setOnes();
  return SymMatrix(c);
}

GroundTruth make_sparse_pd(std::size_t p, double target_density, std::uint64_t seed) {
  if (!(target_density > 0.0 && target_density < 1.0)) {
    throw Error(ErrorKind::OutOfRange, "target density must lie in (0, 1)");
  }
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "need p >= 2");
  const double m = static_cast<double>(vech0_length(p));
  const double target_edges = target_density * m;
  auto lo = static_cast<std::size_t>(std::ceil(target_edges * (1.0 - kDensityTolerance) - 1e-9));
  auto hi = static_cast<std::size_t>(std::floor(target_edges * (1.0 + kDensityTolerance) + 1e-9));
  // Below one edge the tolerance band is empty: fall back to a single pair.
  if (hi == 0) lo = hi = 1;
  lo = std::max<std::size_t>(lo, 1);

  Rng rng(seed, stream_id(StreamDomain::Auxiliary, 0));
  for (int attempt = 0; attempt < kMaxConstructionAttempts; ++attempt) {
    const auto sizes = draw_block_sizes(p, lo, hi, rng);
    if (sizes.empty()) continue;
    SymMatrix c = block_one_factor(p, sizes, rng);
    if (min_eigenvalue(c) < kMinEigenvalue) continue;
    (void)cholesky(c);

    GroundTruth gt{c, {}, 0.0};
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        if (c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) gt.support.push_back({i, j});
      }
    }
    gt.density = static_cast<double>(gt.support.size()) / m;
    return gt;
  }
  throw Error(ErrorKind::ConstructionFailed, "no block layout met the density target");
}

double support_accuracy(const SupportEstimate& est, const GroundTruth& truth) {
  const std::size_t p = truth.sigma0.dim();
  std::vector<Edge> sym;
  std::set_symmetric_difference(est.edges.begin(), est.edges.end(), truth.support.begin(), truth.support.end(),
                                std::back_inserter(sym));
  return 100.0 * (1.0 - static_cast<double>(sym.size()) / static_cast<double>(vech0_length(p)));
}

bool has_false_positive(const SupportEstimate& est, const GroundTruth& truth) {
  return std::any_of(est.edges.begin(), est.edges.end(), [&](const Edge& e) {
    return !std::binary_search(truth.support.begin(), truth.support.end(), e);
  });
}

SimulationReport run_support_benchmark(const GroundTruth& truth, std::size_t n, const BenchmarkOptions& options) {
  if (options.replications < 1) throw Error(ErrorKind::InvalidArgument, "need at least one replication");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw Error(ErrorKind::OutOfRange, "alpha must lie in (0, 1)");
  if (options.methods.empty()) throw Error(ErrorKind::InvalidArgument, "no methods requested");
  const std::size_t p = truth.sigma0.dim();
  const std::size_t d = vech0_length(p);
  const std::size_t m = options.samples != 0 ? options.samples : default_draws(d, options.alpha);
  const bool need_bayes = std::any_of(options.methods.begin(), options.methods.end(), [](SupportMethod s) {
    return s == SupportMethod::BayesOptimal || s == SupportMethod::BayesBonferroni;
  });
  const Matrix factor = cholesky(truth.sigma0);
  const Vector zero = Vector::Zero(static_cast<Eigen::Index>(p));

  const std::size_t s_count = options.replications;
  std::vector<std::uint64_t> seeds(s_count);
  for (std::size_t r = 0; r < s_count; ++r) seeds[r] = derive_seed(options.seed, r);
  std::vector<ReplicationOutcome> outcomes(s_count);

  parallel_for(s_count, [&](std::size_t r) {
    Rng data_rng(seeds[r], stream_id(StreamDomain::Data, 0));
    const Matrix x = sample_mvn(zero, factor, n, data_rng);
    std::optional<std::pair<QuantileRectangle, QuantileRectangle>> rects;
    if (need_bayes) {
      const PosteriorSpec post = posterior_update(default_prior(x), x);
      rects = bayes_rectangles(post, options.alpha, m, options.batch_size, seeds[r]);
    }
    std::optional<Matrix> pvalues;
    auto& out = outcomes[r];
    for (SupportMethod method : options.methods) {
      SupportEstimate est;
      switch (method) {
        case SupportMethod::BayesOptimal: est = support_from_rectangle(rects->first, method); break;
        case SupportMethod::BayesBonferroni: est = support_from_rectangle(rects->second, method); break;
        case SupportMethod::MtBonferroni:
        case SupportMethod::MtHolm:
          if (!pvalues) pvalues = corr_test_pvalues(x);
          est = mt_adjust(*pvalues, options.alpha, method);
          break;
      }
      out.accuracy.push_back(support_accuracy(est, truth));
      out.false_positive.push_back(has_false_positive(est, truth));
    }
  });

  SimulationReport report;
  report.density = truth.density;
  report.n = n;
  report.seeds = seeds;
  for (std::size_t k = 0; k < options.methods.size(); ++k) {
    std::vector<double> acc(s_count);
    std::size_t fp = 0;
    for (std::size_t r = 0; r < s_count; ++r) {
      acc[r] = outcomes[r].accuracy[k];
      fp += outcomes[r].false_positive[k] ? 1 : 0;
    }
    report.rows.push_back({options.methods[k], mean(acc), sample_sd(acc),
                           100.0 * static_cast<double>(fp) / static_cast<double>(s_count), s_count});
  }
  return report;
}

std::vector<GridCell> uncertainty_grid(const std::vector<std::size_t>& n_values,
                                       const std::vector<std::size_t>& p_values,
                                       const std::vector<double>& rho_values, const GridOptions& options) {
  if (n_values.empty() || p_values.empty() || rho_values.empty()) {
    throw Error(ErrorKind::InvalidArgument, "grid axes must be non-empty");
  }
  if (options.replications < 1) throw Error(ErrorKind::InvalidArgument, "need at least one replication");
  std::vector<GridCell> cells;
  for (std::size_t n : n_values) {
    for (std::size_t p : p_values) {
      if (p < 2) throw Error(ErrorKind::InvalidArgument, "grid needs p >= 2");
      for (double rho : rho_values) {
        cells.push_back({n, p, rho, 0.0, default_method_for(vech0_length(p))});
      }
    }
  }
  const std::size_t reps = options.replications;
  std::vector<double> lengths(cells.size() * reps);

  parallel_for(lengths.size(), [&](std::size_t task) {
    const std::size_t c = task / reps;
    const std::size_t r = task % reps;
    const GridCell& cell = cells[c];
    const std::uint64_t seed = derive_seed(derive_seed(options.seed, c), r);
    const SymMatrix scale = make_equicorrelation(cell.p, cell.rho);
    const double dof = static_cast<double>(cell.p + 2 + cell.n);
    const std::size_t d = vech0_length(cell.p);
    RectangleOptions ro;
    ro.method = cell.method;
    ro.samples = options.samples != 0 ? options.samples : default_draws(d, options.alpha);
    ro.validation_samples = options.validation_samples;
    ro.grid_size = options.grid_size;
    ro.batch_size = options.batch_size;
    const PosteriorSpec post{scale, dof, static_cast<Eigen::Index>(cell.n)};
    const QuantileRectangle rect = credible_rectangle(post, options.alpha, ro, seed);
    lengths[task] = mean_length(rect);
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) sum += lengths[c * reps + r];
    cells[c].m_l = sum / static_cast<double>(reps);
  }
  return cells;
}

}  // namespace credrect
