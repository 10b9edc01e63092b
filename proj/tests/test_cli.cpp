#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "report_json.hpp"

using ngonstab::cli::json;
using ngonstab::cli::run_command;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ngonstab_test_" + name);
}

}  // namespace

TEST(Cli, CertifySegment) {
  auto r = run({"certify", "--segment", "1.1459"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["clearance"].get<double>(), 1.2363636, 1e-7);
  EXPECT_EQ(j["checkpoints"].size(), 10u);
  for (const auto& c : j["checkpoints"]) EXPECT_GT(c["margin"].get<double>(), 0);
  EXPECT_EQ(j["chain"].size(), 5u);
  EXPECT_EQ(run({"certify", "--segment", "0.7164"}).code, 0);
  EXPECT_EQ(run({"certify", "--segment", "1.24"}).code, 3);
  EXPECT_EQ(run({"certify"}).code, 0);
}

TEST(Cli, CertifyCustomCheckpoints) {
  const auto path = temp_file("checkpoints.json");
  {
    std::ofstream f(path);
    f << R"({"checkpoints": [{"beta0": 1.0, "e0": 0.0}, {"beta0": 1.0, "e0": 0.5}]})";
  }
  auto r = run({"certify", "--checkpoints", path.string(), "--segment", "0.5"});
  EXPECT_EQ(r.code, 0) << r.err;
  {
    std::ofstream f(path);
    f << R"([{"beta0": 1.5, "e0": 0.0}])";
  }
  EXPECT_EQ(run({"certify", "--checkpoints", path.string()}).code, 3);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  EXPECT_EQ(run({"certify", "--checkpoints", path.string()}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, ClassifyPentagon) {
  auto r = run({"classify", "--n", "5", "--e", "0.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "Hyperbolic");
  EXPECT_EQ(j["n"], 5);
  ASSERT_EQ(j["blocks"].size(), 2u);
  EXPECT_TRUE(j["blocks"][0].contains("eigenvalues"));
  EXPECT_TRUE(j["blocks"][0]["eigenvalues"][0].contains("re"));
}

TEST(Cli, RegionNotMember) {
  auto r = run({"region", "--beta", "1.36", "--e", "0.05"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "not member");
  EXPECT_NEAR(j["nearest_bound"].get<double>(), 1.36 * 1.05 / 1.15, 1e-12);
  auto m = json::parse(run({"region", "--beta", "1.1459", "--e", "0.95"}).out);
  EXPECT_EQ(m["verdict"], "member");
  EXPECT_EQ(m["witness"]["region"], "U1");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"classify", "--n", "5", "--e", "0.995"}).code, 2);
  EXPECT_EQ(run({"classify", "--n", "5", "--e", "zero"}).code, 64);
  EXPECT_EQ(run({"classify", "--n", "5", "--e", "0.3", "--bogus", "1"}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"beta", "--beta", "1.0"}).code, 64);
  EXPECT_EQ(run({"reduce", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"sweep", "--beta", "0:1", "--e", "0:0.5:0.25"}).code, 64);
  EXPECT_EQ(run({"sweep", "--beta", "0:1:0.5", "--e", "0.9:1.0:0.05"}).code, 2);
  EXPECT_EQ(run({"operator", "--kind", "planar", "--e", "0.5"}).code, 64);
  EXPECT_EQ(run({"operator", "--kind", "wave", "--beta", "1", "--e", "0.5"}).code, 64);
  EXPECT_EQ(run({"--help"}).code, 0);
  auto refused = run({"beta", "--beta", "1.0", "--e", "0.999"});
  EXPECT_EQ(refused.code, 2);
  EXPECT_NE(refused.err.find("near-singular"), std::string::npos);
}

TEST(Cli, ReduceWritesFile) {
  const auto path = temp_file("reduce.json");
  auto r = run({"reduce", "--n", "5", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  const json j = json::parse(f);
  EXPECT_LE(j["offblock_residual"].get<double>(), 1e-10);
  EXPECT_EQ(j["blocks"].size(), 4u);
  EXPECT_EQ(j["blocks"][3]["label"], "L(2)");
  EXPECT_EQ(j["blocks"][3]["matrix"].size(), 4u);
  std::filesystem::remove(path);
}

TEST(Cli, BetaReport) {
  auto r = run({"beta", "--beta", "1.36", "--e", "0.7"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["class"], "Hyperbolic");
  EXPECT_EQ(j["eigenvalues"].size(), 4u);
}

TEST(Cli, SweepIsRowMajorAndBitStable) {
  const std::vector<std::string> args{"sweep", "--beta", "0.2:1.4:0.6", "--e", "0:0.8:0.4"};
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "beta,e,class,margin");
  std::vector<std::pair<std::string, std::string>> keys;
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string beta, e;
    std::getline(cells, beta, ',');
    std::getline(cells, e, ',');
    keys.emplace_back(beta, e);
  }
  const std::vector<std::pair<std::string, std::string>> expected{
      {"0.2", "0"}, {"0.2", "0.4"}, {"0.2", "0.8"}, {"0.8", "0"}, {"0.8", "0.4"},
      {"0.8", "0.8"}, {"1.4", "0"}, {"1.4", "0.4"}, {"1.4", "0.8"}};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(a.out.find('\r'), std::string::npos);

  const auto path = temp_file("sweep.csv");
  std::vector<std::string> with_out = args;
  with_out.push_back("--out");
  with_out.push_back(path.string());
  EXPECT_EQ(run(with_out).code, 0);
  std::ifstream f(path, std::ios::binary);
  std::stringstream buf;
  buf << f.rdbuf();
  EXPECT_EQ(buf.str(), a.out);
  std::filesystem::remove(path);
}

TEST(Cli, RangeParsing) {
  const auto r = ngonstab::cli::parse_range("0:1:0.1");
  EXPECT_EQ(ngonstab::cli::range_values(r).size(), 11u);
  EXPECT_THROW(ngonstab::cli::parse_range("0:1:0"), std::invalid_argument);
  EXPECT_THROW(ngonstab::cli::parse_range("1:0:0.1"), std::invalid_argument);
  EXPECT_THROW(ngonstab::cli::parse_range("a:1:0.1"), std::invalid_argument);
}

TEST(Cli, OperatorReport) {
  auto r = run({"operator", "--kind", "scalar", "--delta", "1.5", "--e", "0.5", "--omega-count", "16", "--N", "32"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_GT(j["min_eig"].get<double>(), 0);
  EXPECT_EQ(j["omega_count"], 16);
  EXPECT_TRUE(j["converged"].get<bool>());
  for (const char* key : {"kind", "e", "N", "worst_phi", "evidence"}) EXPECT_TRUE(j.contains(key)) << key;
  auto block = run({"operator", "--kind", "block", "--n", "5", "--l", "2", "--e", "0.3", "--omega-count", "8", "--N", "16"});
  EXPECT_EQ(block.code, 0) << block.err;
}
