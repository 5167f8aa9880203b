#include "cli.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qcf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, IntervalsJson) {
  const auto j = run_json({"intervals", "--model", "sphere", "--dim", "3"});
  EXPECT_EQ(j["lo"], "-3/8");
  EXPECT_EQ(j["hi"], "1/3");
  EXPECT_EQ(j["lo_open"], true);
  EXPECT_EQ(j["n"], 3);
}

TEST(Cli, IntervalsAllListsEveryModel) {
  const auto j = run_json({"intervals", "--all"});
  EXPECT_GE(j["intervals"].size(), 30u);
}

TEST(Cli, VerdictJsonShape) {
  const auto j = run_json({"intervals", "--model", "sphere", "--dim", "5", "--tau", "-7/20"});
  EXPECT_EQ(j["tau"]["num"], "-7");
  EXPECT_EQ(j["tau"]["den"], "20");
  EXPECT_EQ(j["verdict"], "fails_conformal");
  ASSERT_EQ(j["witnesses"].size(), 1u);
  EXPECT_EQ(j["witnesses"][0]["value"], "12");
}

TEST(Cli, DecimalTauIsExact) {
  const auto j = run_json({"intervals", "--model", "sphere", "--dim", "5", "--tau", "-0.3"});
  EXPECT_EQ(j["tau"]["num"], "-3");
  EXPECT_EQ(j["tau"]["den"], "10");
  EXPECT_EQ(j["verdict"], "indeterminate");
}

TEST(Cli, BergerThirdDerivative) {
  const auto j = run_json({"berger", "--tau", "1/3", "--at", "1", "--derivatives", "3"});
  const auto& d = j["derivatives"];
  ASSERT_EQ(d.size(), 3u);
  EXPECT_LT(std::fabs(d[0]["value"].get<double>()), 1e-8);
  EXPECT_LT(std::fabs(d[1]["value"].get<double>()), 1e-6);
  EXPECT_NEAR(d[2]["value"].get<double>(), 5120.0 / 9, 0.1);
}

TEST(Cli, SymbolDegenerateText) {
  const auto r = run({"symbol", "--dim", "5", "--tau", "-5/16", "--trials", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("degenerate; kernel contains the metric direction"), std::string::npos);
}

TEST(Cli, CurveCsvHeader) {
  const auto r = run({"curve", "--curve", "berger", "--tau", "0", "--from", "0.5", "--to", "1.5", "--steps", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "param,value,d1,d2,d3,err1,err2,err3");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, CurveIsIndependentOfJobs) {
  const std::vector<std::string> args{"curve", "--curve", "product", "--tau", "-1/2", "--steps", "9"};
  auto parallel = args;
  parallel.insert(parallel.begin(), {"--jobs", "4"});
  EXPECT_EQ(run(args).out, run(parallel).out);
}

TEST(Cli, RigidityProduct) {
  const auto j = run_json({"rigidity", "--model", "product", "--m", "2"});
  ASSERT_EQ(j["exceptional"].size(), 2u);
  EXPECT_EQ(j["exceptional"][0]["tau"], "-1/2");
  EXPECT_EQ(j["exceptional"][1]["tau"], "0");
  EXPECT_EQ(j["bach"]["rigid"], "holds");
}

TEST(Cli, BishopDeductions) {
  EXPECT_EQ(run_json({"bishop", "--radius", "1.1", "--dim", "3"})["deduction"], "volume_at_least");
  EXPECT_EQ(run_json({"bishop", "--radius", "1", "--dim", "3"})["deduction"], "equality_rigidity");
  EXPECT_EQ(run_json({"bishop", "--berger", "0.9"})["deduction"], "inconclusive");
}

TEST(Cli, GradientOfRoundSphere) {
  const auto j = run_json({"grad", "--algebra", "su2", "--metric", "1,1,1", "--tau", "0"});
  EXPECT_DOUBLE_EQ(j["gradient"][0][0].get<double>(), -2.0);
  EXPECT_DOUBLE_EQ(j["scalar"].get<double>(), 6.0);
}

TEST(Cli, UnknownModelListsCatalog) {
  const auto r = run({"intervals", "--model", "klein", "--dim", "3"});
  EXPECT_EQ(r.code, qcf::cli::kInvalidInput);
  EXPECT_NE(r.err.find("available models"), std::string::npos);
}

TEST(Cli, MissingFirstEigenvalueIsInsufficientData) {
  for (const std::string fmt : {"json", "text", "csv"}) {
    const auto r = run({"--format", fmt, "intervals", "--model", "hyperbolic", "--dim", "6", "--tau", "0"});
    EXPECT_EQ(r.code, qcf::cli::kInsufficientData) << fmt;
    EXPECT_NE(r.err.find("lambda1"), std::string::npos) << fmt;
  }
  const auto ok = run({"intervals", "--model", "hyperbolic", "--dim", "6", "--tau", "0", "--lambda1", "7"});
  EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST(Cli, BadArgumentsAreInvalidInput) {
  EXPECT_EQ(run({"intervals", "--model", "sphere", "--dim", "3", "--tau", "x/y"}).code, qcf::cli::kInvalidInput);
  EXPECT_EQ(run({"nonsense"}).code, qcf::cli::kInvalidInput);
  EXPECT_EQ(run({"--format", "xml", "catalog"}).code, qcf::cli::kInvalidInput);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, VerifyFilterSelectsBergerCriteria) {
  const auto j = run_json({"verify", "--filter", "berger"});
  ASSERT_EQ(j["criteria"].size(), 2u);
  EXPECT_EQ(j["criteria"][0]["id"], "2");
  EXPECT_EQ(j["criteria"][1]["id"], "3");
  EXPECT_EQ(j["passed"], true);
}

TEST(Cli, VerifyRejectsCorruptedCatalog) {
  const auto path = std::filesystem::temp_directory_path() / "qcf_cli_corrupt.json";
  {
    std::ofstream out(path);
    out << R"({"schema_version":1,"models":[{"model":"cp","param":2,"tt":{"least":"30","known":["30"]}}]})";
  }
  const auto r = run({"--catalog", path.string(), "verify", "--filter", "11a"});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, qcf::cli::kVerifyFailed);
  EXPECT_NE(r.out.find("CP^2"), std::string::npos);
}

TEST(Cli, OutputIsByteIdentical) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--format", "json", "verify", "--filter", "6,7a"},
           {"--seed", "7", "symbol", "--dim", "6", "--tau", "1/9", "--trials", "25"},
           {"--format", "csv", "intervals", "--all"},
           {"--jobs", "3", "curve", "--curve", "berger", "--tau", "1/3", "--steps", "7", "--derivatives", "3"}}) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}
