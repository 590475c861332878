#include "credrect/error.hpp"
#include "credrect/io.hpp"
#include "credrect/posterior.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

namespace credrect {
namespace {

namespace fs = std::filesystem;

TimeseriesData parse(const std::string& text, bool transpose = false) {
  std::istringstream in(text);
  return parse_timeseries_csv(in, transpose);
}

ErrorKind parse_error_kind(const std::string& text) {
  try {
    (void)parse(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("credrect_io_" + std::to_string(::getpid()) + "_" + name);
}

TEST(Csv, LargeNumericTable) {
  std::ostringstream os;
  Rng rng(1);
  for (int r = 0; r < 95; ++r) {
    for (int c = 0; c < 107; ++c) os << (c ? "," : "") << rng.normal();
    os << '\n';
  }
  const TimeseriesData data = parse(os.str());
  EXPECT_EQ(data.x.rows(), 95);
  EXPECT_EQ(data.x.cols(), 107);
  EXPECT_TRUE(data.labels.empty());
}

TEST(Csv, HeaderGivesLabels) {
  const TimeseriesData data = parse("roi_a,roi_b\n1,2\n3,4.5\n-1e-3,6\n");
  EXPECT_EQ(data.labels, (std::vector<std::string>{"roi_a", "roi_b"}));
  ASSERT_EQ(data.x.rows(), 3);
  ASSERT_EQ(data.x.cols(), 2);
  EXPECT_EQ(data.x(1, 1), 4.5);
  EXPECT_EQ(data.x(2, 0), -1e-3);
}

TEST(Csv, TransposeSwapsRolesAndDropsLabels) {
  const TimeseriesData data = parse("t1,t2,t3\n1,2,3\n4,5,6\n", true);
  EXPECT_EQ(data.x.rows(), 3);
  EXPECT_EQ(data.x.cols(), 2);
  EXPECT_EQ(data.x(2, 1), 6.0);
  EXPECT_TRUE(data.labels.empty());
}

TEST(Csv, RaggedRowNamesLine) {
  try {
    (void)parse("1,2\n3,4\n5\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RaggedRows);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Csv, NonNumericAndEmptyInputs) {
  EXPECT_EQ(parse_error_kind("1,2\n3,x\n"), ErrorKind::NonNumericCell);
  EXPECT_EQ(parse_error_kind(""), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("a,b\n"), ErrorKind::ParseError);
}

TEST(Csv, MissingFileIsIoError) {
  try {
    (void)load_timeseries_csv("/nonexistent/credrect.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IoError);
  }
}

QuantileRectangle sample_rectangle() {
  QuantileRectangle r;
  r.p = 3;
  r.lower = {-0.1234567890123456789, 0.1, 1.0 / 3.0};
  r.upper = {0.2, 0.30000000000000004, 0.9999999999999999};
  r.level_t = 0.05 / 3.0;
  r.nominal_alpha = 0.05;
  r.method = Method::OnlineBghm;
  return r;
}

TEST(RectangleJson, FieldsAndOrdering) {
  RunConfig cfg;
  cfg.subcommand = "rectangle";
  cfg.seed = 42;
  const Json j = rectangle_to_json(sample_rectangle(), to_json(cfg));
  EXPECT_EQ(j.at("version"), kFormatVersion);
  EXPECT_EQ(j.at("p"), 3);
  EXPECT_EQ(j.at("d"), 3);
  EXPECT_EQ(j.at("ordering"), "row-major-upper");
  EXPECT_EQ(j.at("method"), "online_bghm");
  EXPECT_EQ(j.at("config").at("seed"), 42);
}

TEST(RectangleJson, ByteExactRoundTrip) {
  const Json cfg = to_json(RunConfig{});
  const std::string first = dump_json(rectangle_to_json(sample_rectangle(), cfg));
  const fs::path path = temp_file("rect.json");
  write_text(path, first);
  const Json loaded = read_json(path);
  const QuantileRectangle back = rectangle_from_json(loaded);
  EXPECT_EQ(back.lower, sample_rectangle().lower);
  EXPECT_EQ(back.upper, sample_rectangle().upper);
  EXPECT_EQ(back.level_t, sample_rectangle().level_t);
  EXPECT_EQ(dump_json(rectangle_to_json(back, loaded.at("config"))), first);
  fs::remove(path);
}

TEST(RectangleJson, RejectsInconsistentDocuments) {
  Json j = rectangle_to_json(sample_rectangle(), Json::object());
  j["ordering"] = "column-major";
  EXPECT_THROW((void)rectangle_from_json(j), Error);
  j = rectangle_to_json(sample_rectangle(), Json::object());
  j["p"] = 4;
  EXPECT_THROW((void)rectangle_from_json(j), Error);
  j = rectangle_to_json(sample_rectangle(), Json::object());
  j["method"] = "hpd";
  EXPECT_THROW((void)rectangle_from_json(j), Error);
}

TEST(PosteriorJson, RoundTrip) {
  Matrix s(2, 2);
  s << 2.5, 0.1, 0.1, 1.0 / 7.0;
  const PosteriorSpec post{SymMatrix(s), 57.0, 53};
  const Json j = posterior_to_json(post, to_json(RunConfig{}));
  const PosteriorSpec back = posterior_from_json(j);
  EXPECT_EQ(back.scale, post.scale);
  EXPECT_EQ(back.dof, post.dof);
  EXPECT_EQ(back.n, post.n);
}

TEST(EdgeLists, OneBasedWithLabels) {
  SupportEstimate est{4, {{0, 1}, {2, 3}}, 0.05, SupportMethod::MtHolm};
  EXPECT_EQ(format_support_edges(est, {}), "1 2\n3 4\n");
  EXPECT_EQ(format_support_edges(est, {"a", "b", "c d", "e"}), "1 2 a b\n3 4 c_d e\n");
  const Json summary = support_summary(est, Json::object());
  EXPECT_EQ(summary.at("n_edges"), 2);
  EXPECT_EQ(summary.at("method"), "mt_holm");
}

TEST(EdgeLists, PairDiffDirections) {
  PairDiff diff;
  diff.disjoint_dims = {{1, Direction::Gained}, {2, Direction::Lost}};
  diff.globally_different = true;
  EXPECT_EQ(format_pair_diff(diff, 3, {}), "1 3 gained\n2 3 lost\n");
  EXPECT_EQ(format_pair_diff(diff, 0, {}), "2 gained\n3 lost\n");
  const Json s = pair_diff_summary(diff, 3, Json::object());
  EXPECT_EQ(s.at("n_gained"), 1);
  EXPECT_EQ(s.at("n_lost"), 1);
  EXPECT_EQ(s.at("globally_different"), true);
}

TEST(Reports, CsvHeaders) {
  SimulationReport rep;
  rep.density = 0.24;
  rep.n = 50;
  rep.rows.push_back({SupportMethod::MtBonferroni, 80.5, 1.0, 7.0, 200});
  const std::string csv = format_simulation_csv({rep});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,density,n,acc_mean,acc_sd,fwer_hat,S");
  EXPECT_NE(csv.find("mt_bonferroni,0.24,50,80.5,1,7,200"), std::string::npos);
  const std::string grid = format_grid_csv({GridCell{50, 5, 0.4, 0.25, Method::Bghm}});
  EXPECT_EQ(grid, "n,p,rho,m_l\n50,5,0.4,0.25\n");
  EXPECT_EQ(sidecar_path("out/report.csv"), fs::path("out/report.csv.json"));
}

}  // namespace
}  // namespace credrect
