#include "app.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace nodal::cli {
namespace {

using Json = nlohmann::json;

RunConfig make(const std::string& command, std::vector<int> degrees, int sphere = 2) {
  RunConfig c;
  c.command = command;
  c.degrees = std::move(degrees);
  c.sphere_dim = sphere;
  c.trials = 20;
  return c;
}

Json run_json(const RunConfig& c) {
  const auto r = run(c);
  EXPECT_EQ(r.exit_code, kOk) << r.message;
  return Json::parse(r.report);
}

void expect_schema(const Json& j) {
  for (const char* key : {"command", "version", "config", "theory", "estimate", "diagnostics", "experimental"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["theory"].contains("formula_id"));
  for (const char* key : {"mean", "stderr", "trials"}) EXPECT_TRUE(j["estimate"].contains(key)) << key;
  for (const char* key : {"degenerate_resamples", "depth_escalations", "max_residual"})
    EXPECT_TRUE(j["diagnostics"].contains(key)) << key;
}

TEST(Run, Invariants) {
  const Json j = run_json(make("invariants", {6}));
  expect_schema(j);
  EXPECT_EQ(j["theory"]["formula_id"], "THM_2_3");
  EXPECT_NEAR(j["theory"]["value"].get<double>(), 13 / (4 * M_PI), 1e-14);
  EXPECT_TRUE(j["identities"].contains("THM_2_1"));
}

TEST(Run, Count) {
  const Json j = run_json(make("count", {2, 3}));
  expect_schema(j);
  EXPECT_EQ(j["theory"]["value"], 12);
  EXPECT_LE(j["estimate"]["mean"].get<double>(), 12.0);
  EXPECT_EQ(j["zeros"].size(), static_cast<std::size_t>(j["estimate"]["mean"].get<double>()));
  EXPECT_EQ(j["coefficients"].size(), 2u);
}

TEST(Run, AverageOnCircleIsExact) {
  const Json j = run_json(make("average", {5}, 1));
  EXPECT_EQ(j["theory"]["formula_id"], "THM_1_1");
  EXPECT_DOUBLE_EQ(j["estimate"]["mean"].get<double>(), 10.0);
  EXPECT_DOUBLE_EQ(j["estimate"]["stderr"].get<double>(), 0.0);
}

TEST(Run, AverageOnSphere) {
  const Json j = run_json(make("average", {2}));
  EXPECT_DOUBLE_EQ(j["theory"]["value"].get<double>(), 6.0);
  EXPECT_EQ(j["estimate"]["trials"], 20);
  EXPECT_FALSE(j["experimental"].get<bool>());
  EXPECT_TRUE(j.contains("histogram"));
}

TEST(Run, ConjectureIsExperimental) {
  const Json j = run_json(make("conjecture", {1, 2}));
  EXPECT_TRUE(j["experimental"].get<bool>());
  EXPECT_EQ(j["theory"]["formula_id"], "SEC5_CONJECTURE");
  EXPECT_NEAR(j["theory"]["value"].get<double>(), std::sqrt(12.0), 1e-12);
}

TEST(Run, Zonal) {
  const Json j = run_json(make("zonal", {4}));
  EXPECT_DOUBLE_EQ(j["estimate"]["mean"].get<double>(), 8.0);
  EXPECT_TRUE(j.contains("alpha_max"));
}

TEST(Run, EmbeddingDegreeTwo) {
  const Json j = run_json(make("embedding", {2}));
  EXPECT_EQ(j["theory"]["formula_id"], "THM_2_4");
  EXPECT_NEAR(j["estimate"]["mean"].get<double>(), 7.5, 0.005 * 7.5);
  EXPECT_EQ(j["embedding"]["covering_degree"], 2);
}

TEST(Run, CroftonZonal) {
  auto c = make("crofton-length", {1});
  c.trials = 200;
  const Json j = run_json(c);
  EXPECT_NEAR(j["estimate"]["mean"].get<double>(), 2 * M_PI, 1e-9);
  EXPECT_NEAR(j["theory"]["value"].get<double>(), 2 * M_PI, 1e-12);
}

TEST(ExitCodes, InvalidConfig) {
  EXPECT_EQ(run(make("average", {0})).exit_code, kInvalidConfig);
  EXPECT_EQ(run(make("average", {51})).exit_code, kInvalidConfig);
  EXPECT_EQ(run(make("average", {2}, 3)).exit_code, kInvalidConfig);
  EXPECT_EQ(run(make("frobnicate", {2})).exit_code, kInvalidConfig);
  auto c = make("average", {2});
  c.trials = 0;
  EXPECT_EQ(run(c).exit_code, kInvalidConfig);
  EXPECT_TRUE(run(c).report.empty());
}

TEST(ExitCodes, DegenerateZonal) {
  auto c = make("zonal", {3});
  c.alpha = 0.0;
  const auto r = run(c);
  EXPECT_EQ(r.exit_code, kDegenerate);
  EXPECT_TRUE(Json::parse(r.report).contains("error"));
}

TEST(ExitCodes, ValuesAndNoSpuriousViolations) {
  EXPECT_EQ(kInvariantViolation, 3);
  for (int depth : {0, 1, 2}) {
    auto c = make("embedding", {3});
    c.quadrature_depth = depth;
    EXPECT_NE(run(c).exit_code, kInvariantViolation);
  }
}

TEST(Determinism, ByteIdenticalReports) {
  for (const char* cmd : {"average", "count", "crofton-length", "embedding"}) {
    auto c = make(cmd, {3});
    if (std::string(cmd) == "crofton-length") c.function = "random";
    EXPECT_EQ(run(c).report, run(c).report) << cmd;
    c.format = Format::Csv;
    EXPECT_EQ(run(c).report, run(c).report) << cmd;
  }
}

TEST(Csv, HeaderAndRow) {
  auto c = make("average", {2, 2});
  c.format = Format::Csv;
  const auto r = run(c);
  std::istringstream in(r.report);
  std::string head, row, extra;
  std::getline(in, head);
  std::getline(in, row);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(head,
            "command,version,sphere,degrees,seed,formula_id,theory,mean,stderr,trials,degenerate_resamples,"
            "depth_escalations,max_residual,experimental");
  EXPECT_EQ(row.rfind("average,", 0), 0u);
  EXPECT_NE(row.find("\"[2,2]\""), std::string::npos);
}

TEST(Main, ParsesFlagsAndWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "nodal_cli_test.json";
  std::filesystem::remove(path);
  const std::string out = path.string();
  std::vector<std::string> args{"nodal", "average", "--sphere", "1", "--degree", "7",
                                "--trials", "5", "--seed", "3", "--out", out};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  EXPECT_EQ(main(static_cast<int>(argv.size()), argv.data()), kOk);
  std::ifstream file(path);
  const Json j = Json::parse(std::string(std::istreambuf_iterator<char>(file), {}));
  EXPECT_EQ(j["config"]["seed"], 3);
  EXPECT_DOUBLE_EQ(j["estimate"]["mean"].get<double>(), 14.0);
  std::filesystem::remove(path);
}

TEST(Main, BadFlagsExitTwo) {
  std::vector<std::string> args{"nodal", "average", "--format", "xml"};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  EXPECT_EQ(main(static_cast<int>(argv.size()), argv.data()), kInvalidConfig);
}

}  // namespace
}  // namespace nodal::cli
