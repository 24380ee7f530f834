#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "cli/commands.hpp"

namespace defprior::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("defprior_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

TEST(Analyze, DefaultPriorHalvesEstimate) {
  AnalyzeOptions opt;
  opt.b = 3.0;
  opt.se = 1.0;
  const AnalysisReport r = analyze(opt);
  EXPECT_DOUBLE_EQ(r.shrunk.post_mean, 1.5);
  EXPECT_DOUBLE_EQ(r.flat.post_mean, 3.0);
  EXPECT_NEAR(r.shrunk.credible_interval.width() / r.flat.credible_interval.width(),
              1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_FALSE(r.conflict.flag);
  EXPECT_EQ(r.se_source, "given");
}

TEST(Analyze, ImpliedSeAndConflictWarning) {
  AnalyzeOptions opt;
  opt.b = 4.0;
  opt.p = 0.00001;
  const AnalysisReport r = analyze(opt);
  EXPECT_EQ(r.se_source, "implied");
  EXPECT_TRUE(r.conflict.flag);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_NE(r.warnings.front().find("should not be used"), std::string::npos);
}

TEST(Analyze, UsageErrors) {
  AnalyzeOptions none;
  none.b = 1.0;
  EXPECT_THROW(analyze(none), UsageError);
  AnalyzeOptions both;
  both.b = 1.0;
  both.se = 1.0;
  both.p = 0.1;
  EXPECT_THROW(analyze(both), UsageError);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_analyze(none, out, err), kExitUsage);
  AnalyzeOptions bad;
  bad.b = 1.0;
  bad.se = -1.0;
  EXPECT_EQ(cmd_analyze(bad, out, err), kExitDataError);
}

TEST(Analyze, JsonSchema) {
  AnalyzeOptions opt;
  opt.b = 2.0;
  opt.se = 1.0;
  opt.json = true;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_analyze(opt, out, err), kExitOk);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["input"]["b"], 2.0);
  EXPECT_DOUBLE_EQ(doc["default_prior"]["post_mean"].get<double>(), 1.0);
  EXPECT_EQ(doc["default_prior"]["credible_interval"].size(), 2u);
  EXPECT_TRUE(doc.contains("conflict"));
}

TEST(CoverageCurveCommand, CsvIsMonotone) {
  CoverageCurveOptions opt;
  opt.points = 25;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_coverage_curve(opt, out, err), kExitOk);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "p_value,coverage");
  int rows = 0;
  double last = 0.0;
  while (std::getline(in, line)) {
    const double c = std::stod(line.substr(line.find(',') + 1));
    EXPECT_GT(c, last);
    last = c;
    ++rows;
  }
  EXPECT_EQ(rows, 25);
  const auto grid = log_spaced_p_grid(25);
  EXPECT_DOUBLE_EQ(grid.front(), 0.001);
  EXPECT_EQ(grid.back(), 1.0);
}

TEST(JeffreysCurveCommand, WritesOneBlockPerScale) {
  JeffreysCurveOptions opt;
  opt.points = 11;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_jeffreys_curve(opt, out, err), kExitOk);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "se,theta,density");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 33);
}

TEST(FitCommand, DropsCensoredRowAndReportsIt) {
  TempDir dir;
  SimulateCommandOptions sim;
  sim.seed = 8;
  sim.studies = 10;
  sim.per_study = 8;
  sim.drop_censored = true;
  std::ostringstream csv, err;
  ASSERT_EQ(cmd_simulate(sim, csv, err), kExitOk);
  write_file(dir.file("data.csv"), csv.str() + "S0001,0.0004\n");

  FitOptions opt;
  opt.input = dir.file("data.csv").string();
  opt.json = true;
  std::ostringstream out;
  ASSERT_EQ(cmd_fit(opt, out, err), kExitOk) << err.str();
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["dropped"]["count"], 1);
  EXPECT_EQ(doc["dropped"]["by_reason"]["censored-by-protocol"], 1);
  EXPECT_EQ(doc["fit"]["model_kind"], "mixed");
  const std::string text = csv.str();
  const auto rows = static_cast<int>(std::count(text.begin(), text.end(), '\n')) - 1;
  EXPECT_EQ(doc["fit"]["n_records"], rows);
  EXPECT_TRUE(doc["fit"]["converged"].get<bool>());

  opt.model = "marginal";
  std::ostringstream out2;
  ASSERT_EQ(cmd_fit(opt, out2, err), kExitOk);
  EXPECT_EQ(nlohmann::json::parse(out2.str())["fit"]["model_kind"], "marginal");
}

TEST(FitCommand, NullDataGivesNonpositiveOrSmallPhi) {
  TempDir dir;
  SimulateCommandOptions sim;
  sim.phi = 0.0;
  sim.sigma = 0.0;
  sim.seed = 12;
  sim.drop_censored = true;
  std::ostringstream csv, err;
  ASSERT_EQ(cmd_simulate(sim, csv, err), kExitOk);
  write_file(dir.file("null.csv"), csv.str());
  FitOptions opt;
  opt.input = dir.file("null.csv").string();
  opt.json = true;
  std::ostringstream out;
  cmd_fit(opt, out, err);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_LE(doc["fit"]["phi_ci"][0].get<double>(), 0.0);
}

TEST(FitCommand, ParseErrorsAndBadArguments) {
  TempDir dir;
  write_file(dir.file("bad.csv"), "study_id,p_value\nA,0.1\nB,zzz\n");
  FitOptions opt;
  opt.input = dir.file("bad.csv").string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fit(opt, out, err), kExitDataError);
  EXPECT_NE(err.str().find("bad.csv:3"), std::string::npos);

  opt.input = dir.file("missing.csv").string();
  EXPECT_EQ(cmd_fit(opt, out, err), kExitDataError);
  opt.model = "other";
  EXPECT_EQ(cmd_fit(opt, out, err), kExitUsage);
}

TEST(SimulateCommand, ByteIdenticalForSameSeed) {
  SimulateCommandOptions opt;
  opt.seed = 77;
  std::ostringstream a, b, c, err;
  cmd_simulate(opt, a, err);
  cmd_simulate(opt, b, err);
  opt.seed = 78;
  cmd_simulate(opt, c, err);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(VerifyCommand, JsonLinesAndExitCode) {
  VerifyOptions opt;
  opt.eb_replications = 0;
  opt.json = true;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(opt, out, err), kExitOk);
  std::istringstream in(out.str());
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto doc = nlohmann::json::parse(line);
    EXPECT_TRUE(doc.contains("status"));
    ++n;
  }
  EXPECT_GT(n, 5);
}

}  // namespace
}  // namespace defprior::cli
