// credrect: credible rectangles over correlation matrices from the command line.
//
//   credrect fit data.csv --out post.json
//   credrect rectangle post.json --alpha 0.05 --out rect.json
//   credrect compare a.json b.json --out diff.txt
//   credrect support data.csv --method mt_holm --out edges.txt
//   credrect simulate --out table.csv
//   credrect grid --out grid.csv
//
// Exit status: 0 on success, 2 on usage errors, 1 on data or numeric errors.

#include "credrect/comparison.hpp"
#include "credrect/credible_rectangle.hpp"
#include "credrect/error.hpp"
#include "credrect/io.hpp"
#include "credrect/posterior.hpp"
#include "credrect/random.hpp"
#include "credrect/simulation.hpp"
#include "credrect/support.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace credrect;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  RunConfig run;
  std::string prior_scale;
  double prior_dof = 0.0;
  std::vector<std::size_t> p_values;
  std::vector<double> densities;
  std::vector<std::size_t> n_values;
  std::vector<double> rho_values;
  std::size_t reps = 0;
};

bool is_json(const std::string& path) { return fs::path(path).extension() == ".json"; }

TimeseriesMatrix prepared_data(const std::string& path, const Options& o, std::vector<std::string>* labels = nullptr) {
  auto data = load_timeseries_csv(path, o.run.transpose);
  if (o.run.center) data.x.rowwise() -= data.x.colwise().mean();
  if (labels != nullptr) *labels = std::move(data.labels);
  return data.x;
}

PriorSpec prior_for(const TimeseriesMatrix& x, const Options& o) {
  PriorSpec prior = default_prior(x);
  if (!o.prior_scale.empty()) {
    const auto scale = load_timeseries_csv(o.prior_scale).x;
    if (scale.rows() != x.cols() || scale.cols() != x.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "prior scale must be p x p");
    }
    prior.scale = SymMatrix(scale);
  }
  if (o.prior_dof > 0.0) prior.dof = o.prior_dof;
  return prior;
}

// A posterior from either a saved posterior JSON or a data CSV.
PosteriorSpec posterior_from(const std::string& path, const Options& o, std::vector<std::string>* labels = nullptr) {
  if (is_json(path)) return posterior_from_json(read_json(path));
  const TimeseriesMatrix x = prepared_data(path, o, labels);
  return posterior_update(prior_for(x, o), x);
}

RectangleOptions rectangle_options(const Options& o) {
  RectangleOptions ro;
  if (!o.run.method.empty() && o.run.method != "auto") {
    const auto m = parse_method(o.run.method);
    if (!m) throw UsageError("unknown rectangle method '" + o.run.method + "'");
    ro.method = *m;
  }
  ro.samples = o.run.samples;
  ro.validation_samples = o.run.validation_samples;
  ro.grid_size = o.run.grid_size;
  ro.memory_budget_bytes = static_cast<std::size_t>(o.run.memory_budget_mb * 1024.0 * 1024.0);
  return ro;
}

QuantileRectangle rectangle_from(const std::string& path, const Options& o, std::uint64_t seed,
                                 std::vector<std::string>* labels = nullptr) {
  if (is_json(path)) {
    const Json j = read_json(path);
    if (j.contains("lower")) return rectangle_from_json(j);
  }
  return credible_rectangle(posterior_from(path, o, labels), o.run.alpha, rectangle_options(o), seed);
}

void write_artifact(const Options& o, const std::string& body, const Json& summary) {
  write_text(o.run.out, body);
  write_text(sidecar_path(o.run.out), dump_json(summary));
}

void run_fit(const Options& o) {
  const TimeseriesMatrix x = prepared_data(o.run.inputs.at(0), o);
  write_text(o.run.out, dump_json(posterior_to_json(posterior_update(prior_for(x, o), x), to_json(o.run))));
}

void run_rectangle(const Options& o) {
  const QuantileRectangle rect = rectangle_from(o.run.inputs.at(0), o, o.run.seed);
  write_text(o.run.out, dump_json(rectangle_to_json(rect, to_json(o.run))));
}

void run_compare(const Options& o) {
  std::vector<std::string> labels;
  const QuantileRectangle a = rectangle_from(o.run.inputs.at(0), o, derive_seed(o.run.seed, 0), &labels);
  const QuantileRectangle b = rectangle_from(o.run.inputs.at(1), o, derive_seed(o.run.seed, 1));
  if (a.d() != b.d()) throw Error(ErrorKind::DimensionMismatch, "rectangles differ in dimension");
  const PairDiff diff = compare_rectangles(a, b);
  write_artifact(o, format_pair_diff(diff, a.p, labels), pair_diff_summary(diff, a.p, to_json(o.run)));
}

void run_support(const Options& o) {
  const std::string name = o.run.method.empty() ? "bayes_optimal" : o.run.method;
  const auto method = parse_support_method(name);
  if (!method) throw UsageError("unknown support method '" + name + "'");
  const std::string& input = o.run.inputs.at(0);
  std::vector<std::string> labels;
  SupportEstimate est;
  if (*method == SupportMethod::MtBonferroni || *method == SupportMethod::MtHolm) {
    if (is_json(input)) throw UsageError("multiple-testing support needs the data CSV");
    est = mt_adjust(corr_test_pvalues(prepared_data(input, o, &labels)), o.run.alpha, *method);
  } else {
    Options ro = o;
    ro.run.method = *method == SupportMethod::BayesBonferroni ? "bonferroni" : "auto";
    est = support_from_rectangle(rectangle_from(input, ro, o.run.seed, &labels), *method);
  }
  write_artifact(o, format_support_edges(est, labels), support_summary(est, to_json(o.run)));
}

void run_simulate(const Options& o) {
  BenchmarkOptions bo;
  bo.alpha = o.run.alpha;
  bo.replications = o.reps;
  bo.seed = o.run.seed;
  bo.samples = o.run.samples;
  std::vector<SimulationReport> reports;
  std::size_t cell = 0;
  for (std::size_t p : o.p_values) {
    for (double density : o.densities) {
      const GroundTruth truth = make_sparse_pd(p, density, derive_seed(o.run.seed, 1000 + cell));
      for (std::size_t n : o.n_values) {
        bo.seed = derive_seed(o.run.seed, cell++);
        reports.push_back(run_support_benchmark(truth, n, bo));
      }
    }
  }
  write_artifact(o, format_simulation_csv(reports), to_json(o.run));
}

void run_grid(const Options& o) {
  GridOptions go;
  go.alpha = o.run.alpha;
  go.replications = o.reps;
  go.seed = o.run.seed;
  go.samples = o.run.samples;
  go.validation_samples = o.run.validation_samples;
  go.grid_size = o.run.grid_size;
  const auto cells = uncertainty_grid(o.n_values, o.p_values, o.rho_values, go);
  write_artifact(o, format_grid_csv(cells), to_json(o.run));
}

void add_common(CLI::App* cmd, Options& o, bool with_inputs, std::size_t n_inputs) {
  if (with_inputs) cmd->add_option("inputs", o.run.inputs, "Input files")->required()->expected(static_cast<int>(n_inputs));
  cmd->add_option("--out", o.run.out, "Output path")->required();
  cmd->add_option("--seed", o.run.seed, "Random seed")->capture_default_str();
}

void add_rectangle_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--alpha", o.run.alpha, "Joint miscoverage level in (0, 1)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--method", o.run.method, "Rectangle method, or auto");
  cmd->add_option("--grid-size", o.run.grid_size, "Sliced-grid levels")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--samples", o.run.samples, "Posterior draws (0: method default)");
  cmd->add_option("--validation-samples", o.run.validation_samples, "Sliced-grid validation draws")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--memory-budget-mb", o.run.memory_budget_mb, "Sliced-grid tail buffer budget (0: unbounded)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--transpose", o.run.transpose, "CSV rows are variables");
  cmd->add_flag("--center", o.run.center, "Subtract column means before fitting");
  cmd->add_option("--prior-scale", o.prior_scale, "CSV p x p prior scale (default: diagonal sample variances)");
  cmd->add_option("--prior-dof", o.prior_dof, "Prior degrees of freedom (default: p + 2)")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian credible rectangles for correlation matrices"};
  app.require_subcommand(1);
  Options o;

  auto* fit = app.add_subcommand("fit", "Fit the inverse-Wishart posterior of a data CSV");
  add_common(fit, o, true, 1);
  fit->add_flag("--transpose", o.run.transpose, "CSV rows are variables");
  fit->add_flag("--center", o.run.center, "Subtract column means before fitting");
  fit->add_option("--prior-scale", o.prior_scale, "CSV p x p prior scale (default: diagonal sample variances)");
  fit->add_option("--prior-dof", o.prior_dof, "Prior degrees of freedom (default: p + 2)")->check(CLI::PositiveNumber);

  auto* rect = app.add_subcommand("rectangle", "Credible rectangle from a posterior JSON or data CSV");
  add_common(rect, o, true, 1);
  add_rectangle_flags(rect, o);

  auto* compare = app.add_subcommand("compare", "Disjoint coordinates of two rectangles (JSON) or two data CSVs");
  add_common(compare, o, true, 2);
  add_rectangle_flags(compare, o);

  auto* support = app.add_subcommand("support", "Support (edge set) estimate");
  add_common(support, o, true, 1);
  add_rectangle_flags(support, o);

  auto* simulate = app.add_subcommand("simulate", "Support-recovery benchmark on generated sparse matrices");
  add_common(simulate, o, false, 0);
  simulate->add_option("--alpha", o.run.alpha, "Level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  simulate->add_option("--samples", o.run.samples, "Posterior draws per replication (0: ceil(20 d / alpha))");
  o.p_values = {20};
  o.densities = {0.024, 0.24, 0.48};
  o.n_values = {50, 500};
  simulate->add_option("--p", o.p_values, "Matrix dimensions")->delimiter(',')->capture_default_str();
  simulate->add_option("--densities", o.densities, "Target edge densities")->delimiter(',')->capture_default_str();
  simulate->add_option("--n", o.n_values, "Sample sizes")->delimiter(',')->capture_default_str();
  simulate->add_option("--reps", o.reps, "Replications per cell (default 200)");

  auto* grid = app.add_subcommand("grid", "Mean interval length over an (n, p, rho) grid");
  add_common(grid, o, false, 0);
  grid->add_option("--alpha", o.run.alpha, "Level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  grid->add_option("--samples", o.run.samples, "Posterior draws per rectangle (0: ceil(20 d / alpha))");
  std::size_t grid_validation = 20000;
  grid->add_option("--validation-samples", grid_validation, "Sliced-grid validation draws")->capture_default_str();
  grid->add_option("--grid-size", o.run.grid_size, "Sliced-grid levels")->check(CLI::PositiveNumber);
  std::vector<std::size_t> grid_n{50, 200, 800};
  std::vector<std::size_t> grid_p{5, 15, 40};
  o.rho_values = {0.0, 0.4, 0.7};
  grid->add_option("--n", grid_n, "Sample sizes")->delimiter(',')->capture_default_str();
  grid->add_option("--p", grid_p, "Matrix dimensions")->delimiter(',')->capture_default_str();
  grid->add_option("--rho", o.rho_values, "Equicorrelations")->delimiter(',')->capture_default_str();
  grid->add_option("--reps", o.reps, "Replications per cell (default 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto* chosen = app.get_subcommands().front();
  o.run.subcommand = chosen->get_name();
  if (!(o.run.alpha > 0.0 && o.run.alpha < 1.0)) {
    std::cerr << "error: --alpha must lie strictly between 0 and 1\n";
    return 2;
  }
  if (chosen == grid) {
    o.n_values = grid_n;
    o.p_values = grid_p;
    if (o.reps == 0) o.reps = 20;
    o.run.validation_samples = grid_validation;
  }
  if (chosen == simulate && o.reps == 0) o.reps = 200;

  try {
    if (chosen == fit) run_fit(o);
    else if (chosen == rect) run_rectangle(o);
    else if (chosen == compare) run_compare(o);
    else if (chosen == support) run_support(o);
    else if (chosen == simulate) run_simulate(o);
    else run_grid(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
