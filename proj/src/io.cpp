#include "credrect/io.hpp"

#include "credrect/error.hpp"
#include "credrect/vech.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace credrect {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string_view rest(line);
  while (true) {
    const auto comma = rest.find(',');
    cells.push_back(trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return cells;
}

bool parse_number(const std::string& cell, double& value) {
  if (cell.empty()) return false;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

std::string edge_label(const std::vector<std::string>& labels, std::size_t i) {
  std::string s = labels[i];
  for (char& c : s) {
    if (c == ' ' || c == '\t') c = '_';
  }
  return s;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

TimeseriesData parse_timeseries_csv(std::istream& in, bool transpose) {
  TimeseriesData out;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_cells(line);
    std::vector<double> values(cells.size());
    bool numeric = true;
    std::size_t bad = 0;
    for (std::size_t c = 0; c < cells.size() && numeric; ++c) {
      if (!parse_number(cells[c], values[c])) {
        numeric = false;
        bad = c;
      }
    }
    if (first) {
      first = false;
      width = cells.size();
      if (!numeric) {
        out.labels = cells;
        continue;
      }
    } else if (cells.size() != width) {
      throw Error(ErrorKind::RaggedRows, "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                                             " cells, expected " + std::to_string(width));
    }
    if (!numeric) {
      throw Error(ErrorKind::NonNumericCell, "line " + std::to_string(line_no) + ", column " + std::to_string(bad + 1) +
                                                 ": '" + cells[bad] + "'");
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw Error(ErrorKind::ParseError, "no numeric rows");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(width);
  Matrix x(n, p);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < p; ++c) x(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  if (transpose) {
    out.x = x.transpose();
    out.labels.clear();
  } else {
    out.x = std::move(x);
  }
  return out;
}

TimeseriesData load_timeseries_csv(const std::filesystem::path& path, bool transpose) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  try {
    return parse_timeseries_csv(in, transpose);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

Json to_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["inputs"] = c.inputs;
  j["alpha"] = c.alpha;
  j["method"] = c.method;
  j["grid_size"] = c.grid_size;
  j["samples"] = c.samples;
  j["validation_samples"] = c.validation_samples;
  j["memory_budget_mb"] = c.memory_budget_mb;
  j["seed"] = c.seed;
  j["transpose"] = c.transpose;
  j["center"] = c.center;
  j["out"] = c.out;
  return j;
}

Json posterior_to_json(const PosteriorSpec& post, const Json& config) {
  Json scale = Json::array();
  for (Eigen::Index i = 0; i < post.p(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < post.p(); ++k) row.push_back(post.scale(i, k));
    scale.push_back(std::move(row));
  }
  Json j;
  j["version"] = kFormatVersion;
  j["kind"] = "inverse_wishart_posterior";
  j["p"] = post.p();
  j["n"] = post.n;
  j["dof"] = post.dof;
  j["scale"] = std::move(scale);
  j["config"] = config;
  return j;
}

PosteriorSpec posterior_from_json(const Json& j) {
  try {
    const auto p = j.at("p").get<Eigen::Index>();
    const auto& rows = j.at("scale");
    if (static_cast<Eigen::Index>(rows.size()) != p) throw Error(ErrorKind::DimensionMismatch, "scale has wrong row count");
    Matrix m(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(row.size()) != p) throw Error(ErrorKind::DimensionMismatch, "scale is not square");
      for (Eigen::Index k = 0; k < p; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
    PosteriorSpec post{SymMatrix(m), j.at("dof").get<double>(), j.at("n").get<Eigen::Index>()};
    post.validate();
    return post;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("posterior JSON: ") + e.what());
  }
}

Json rectangle_to_json(const QuantileRectangle& rect, const Json& config) {
  Json j;
  j["version"] = kFormatVersion;
  j["p"] = rect.p;
  j["d"] = rect.d();
  j["ordering"] = "row-major-upper";
  j["alpha"] = rect.nominal_alpha;
  j["level_t"] = rect.level_t;
  j["method"] = std::string(to_string(rect.method));
  j["lower"] = rect.lower;
  j["upper"] = rect.upper;
  j["config"] = config;
  return j;
}

QuantileRectangle rectangle_from_json(const Json& j) {
  QuantileRectangle rect;
  try {
    if (j.at("ordering").get<std::string>() != "row-major-upper") {
      throw Error(ErrorKind::ParseError, "unsupported coordinate ordering");
    }
    rect.p = j.at("p").get<std::size_t>();
    rect.nominal_alpha = j.at("alpha").get<double>();
    rect.level_t = j.at("level_t").get<double>();
    const auto name = j.at("method").get<std::string>();
    const auto method = parse_method(name);
    if (!method) throw Error(ErrorKind::ParseError, "unknown method '" + name + "'");
    rect.method = *method;
    rect.lower = j.at("lower").get<std::vector<double>>();
    rect.upper = j.at("upper").get<std::vector<double>>();
    if (j.at("d").get<std::size_t>() != rect.d()) throw Error(ErrorKind::LengthMismatch, "d disagrees with bounds");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("rectangle JSON: ") + e.what());
  }
  if (rect.p != 0 && vech0_length(rect.p) != rect.d()) {
    throw Error(ErrorKind::LengthMismatch, "d is not p(p-1)/2");
  }
  rect.validate();
  return rect;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) { return path.string() + ".json"; }

std::string format_support_edges(const SupportEstimate& est, const std::vector<std::string>& labels) {
  const bool labelled = labels.size() == est.p;
  std::ostringstream os;
  for (const Edge& e : est.edges) {
    os << e.i + 1 << ' ' << e.j + 1;
    if (labelled) os << ' ' << edge_label(labels, e.i) << ' ' << edge_label(labels, e.j);
    os << '\n';
  }
  return os.str();
}

Json support_summary(const SupportEstimate& est, const Json& config) {
  Json j;
  j["method"] = std::string(to_string(est.method));
  j["alpha"] = est.alpha;
  j["n_edges"] = est.edges.size();
  j["p"] = est.p;
  j["config"] = config;
  return j;
}

std::string format_pair_diff(const PairDiff& diff, std::size_t p, const std::vector<std::string>& labels) {
  const bool labelled = p != 0 && labels.size() == p;
  std::ostringstream os;
  for (const auto& entry : diff.disjoint_dims) {
    if (p != 0) {
      const auto [i, j] = vech0_pair(entry.dim, p);
      os << i + 1 << ' ' << j + 1 << ' ' << to_string(entry.direction);
      if (labelled) os << ' ' << edge_label(labels, i) << ' ' << edge_label(labels, j);
    } else {
      os << entry.dim + 1 << ' ' << to_string(entry.direction);
    }
    os << '\n';
  }
  return os.str();
}

Json pair_diff_summary(const PairDiff& diff, std::size_t p, const Json& config) {
  std::size_t gained = 0;
  for (const auto& e : diff.disjoint_dims) gained += e.direction == Direction::Gained ? 1 : 0;
  Json j;
  j["globally_different"] = diff.globally_different;
  j["n_disjoint"] = diff.disjoint_dims.size();
  j["n_gained"] = gained;
  j["n_lost"] = diff.disjoint_dims.size() - gained;
  j["p"] = p;
  j["alpha_a"] = diff.alpha_a;
  j["alpha_b"] = diff.alpha_b;
  j["config"] = config;
  return j;
}

std::string format_simulation_csv(const std::vector<SimulationReport>& reports) {
  std::ostringstream os;
  os << "method,density,n,acc_mean,acc_sd,fwer_hat,S\n";
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      os << to_string(row.method) << ',' << format_number(report.density) << ',' << report.n << ','
         << format_number(row.acc_mean) << ',' << format_number(row.acc_sd) << ',' << format_number(row.fwer_hat)
         << ',' << row.replications << '\n';
    }
  }
  return os.str();
}

std::string format_grid_csv(const std::vector<GridCell>& cells) {
  std::ostringstream os;
  os << "n,p,rho,m_l\n";
  for (const auto& c : cells) {
    os << c.n << ',' << c.p << ',' << format_number(c.rho) << ',' << format_number(c.m_l) << '\n';
  }
  return os.str();
}

}  // namespace credrect
