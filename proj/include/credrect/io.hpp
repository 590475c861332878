#pragma once

#include "credrect/comparison.hpp"
#include "credrect/posterior.hpp"
#include "credrect/rectangle.hpp"
#include "credrect/simulation.hpp"
#include "credrect/support.hpp"
#include "credrect/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace credrect {

using Json = nlohmann::ordered_json;

/// Observations in rows, variables in columns.
struct TimeseriesData {
  TimeseriesMatrix x;
  std::vector<std::string> labels;  // empty when the file has no header
};

/// Comma-separated numeric table. A first line containing any non-numeric cell
/// is taken as a header of column labels. With transpose, file rows are
/// variables and file columns are observations (a header row then names the
/// observations and is dropped).
TimeseriesData parse_timeseries_csv(std::istream& in, bool transpose = false);
TimeseriesData load_timeseries_csv(const std::filesystem::path& path, bool transpose = false);

/// Parameters of a command-line run, embedded in every artifact it writes.
struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  double alpha = 0.05;
  std::string method;
  std::size_t grid_size = 16;
  std::size_t samples = 0;
  std::size_t validation_samples = 100000;
  double memory_budget_mb = 0.0;
  std::uint64_t seed = 0;
  bool transpose = false;
  bool center = false;
  std::string out;
};

Json to_json(const RunConfig& config);

Json posterior_to_json(const PosteriorSpec& post, const Json& config);
PosteriorSpec posterior_from_json(const Json& j);

inline constexpr int kFormatVersion = 1;

/// {version, p, d, ordering, alpha, level_t, method, lower, upper, config}.
/// Numbers are written in shortest round-trip form, so reading and rewriting
/// a file reproduces it byte for byte.
Json rectangle_to_json(const QuantileRectangle& rect, const Json& config);
QuantileRectangle rectangle_from_json(const Json& j);

/// Two-space indented JSON followed by a newline.
std::string dump_json(const Json& j);
Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Where the JSON summary or config of an artifact at `path` goes: path + ".json".
std::filesystem::path sidecar_path(const std::filesystem::path& path);

/// One line "i j" per edge, 1-based, followed by the two labels when known.
std::string format_support_edges(const SupportEstimate& est, const std::vector<std::string>& labels);
Json support_summary(const SupportEstimate& est, const Json& config);

/// One line "i j direction" per disjoint coordinate, 1-based matrix indices
/// (p > 0) or a single 1-based coordinate index when the rectangles are not
/// over a matrix.
std::string format_pair_diff(const PairDiff& diff, std::size_t p, const std::vector<std::string>& labels);
Json pair_diff_summary(const PairDiff& diff, std::size_t p, const Json& config);

/// Header method,density,n,acc_mean,acc_sd,fwer_hat,S.
std::string format_simulation_csv(const std::vector<SimulationReport>& reports);
/// Header n,p,rho,m_l.
std::string format_grid_csv(const std::vector<GridCell>& cells);

}  // namespace credrect
