#include "vsf/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

using vsf::cli::kExitOk;
using vsf::cli::kExitUsage;
using vsf::cli::kExitVerificationFailed;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run vsfRun(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = vsf::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> parseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return int(i);
  }
  ADD_FAILURE() << "no column " << name;
  return 0;
}

TEST(Divisor, LastRowAndTrivialLimit) {
  auto r = vsfRun({"divisor", "--limit", "10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto rows = parseCsv(r.out);
  EXPECT_EQ(rows.front(), (std::vector<std::string>{"n", "d", "D"}));
  EXPECT_EQ(rows.back(), (std::vector<std::string>{"10", "4", "27"}));

  r = vsfRun({"divisor", "--limit", "1"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(parseCsv(r.out).back(), (std::vector<std::string>{"1", "1", "1"}));

  r = vsfRun({"divisor", "--limit", "100", "--checkpoints", "36,97"});
  ASSERT_EQ(r.code, kExitOk);
  rows = parseCsv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][1], "9");
  EXPECT_EQ(rows[2][1], "2");
}

TEST(Divisor, BadArguments) {
  EXPECT_EQ(vsfRun({"divisor", "--limit", "0"}).code, kExitUsage);
  EXPECT_EQ(vsfRun({"divisor"}).code, kExitUsage);
  EXPECT_EQ(vsfRun({"divisor", "--limit", "10", "--checkpoints", "11"}).code, kExitUsage);
}

TEST(DeltaScan, RowCountAndMalformedInput) {
  auto r = vsfRun({"delta-scan", "--xmax", "10", "--envelope", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(parseCsv(r.out).size(), 10u);  // header + 9 rows
  EXPECT_EQ(vsfRun({"delta-scan", "--xmax", "1e6x"}).code, kExitUsage);
  EXPECT_EQ(vsfRun({"delta-scan", "--xmax", "abc"}).code, kExitUsage);
}

TEST(DeltaScan, EnvelopeHoldsExceptAtTheSmallestX) {
  auto r = vsfRun({"delta-scan", "--xmax", "1000000"});
  // Delta(2)/(2^{1/3} ln 2) = 1.494 breaks the unit envelope, so the scan reports failure
  EXPECT_EQ(r.code, kExitVerificationFailed);
  auto rows = parseCsv(r.out);
  const int x = column(rows[0], "x"), norm = column(rows[0], "normalizedDelta");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double value = std::stod(rows[i][norm]);
    if (rows[i][x] == "2") {
      EXPECT_NEAR(value, 1.4941336963093219, 1e-12);
    } else {
      EXPECT_LE(std::abs(value), 1.0) << rows[i][x];
    }
  }
  EXPECT_EQ(rows.back()[x], "1000000");
}

TEST(Theta, DefaultGridAndSingleT) {
  auto r = vsfRun({"theta"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto rows = parseCsv(r.out);
  ASSERT_EQ(rows.size(), 26u);
  const int w = column(rows[0], "residualWigert"), d = column(rows[0], "residualDecomp");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(std::stod(rows[i][w]), 1e-8);
    EXPECT_LT(std::stod(rows[i][d]), 1e-8);
  }
  r = vsfRun({"theta", "--t", "1"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(parseCsv(r.out).size(), 2u);
}

TEST(Theta, BadArguments) {
  EXPECT_EQ(vsfRun({"theta", "--t", "0"}).code, kExitUsage);
  EXPECT_EQ(vsfRun({"theta", "--t", "-1"}).code, kExitUsage);
  EXPECT_EQ(vsfRun({"theta", "--tol", "1e-14"}).code, kExitUsage);
}

TEST(Poisson, ZeroAndRegularized) {
  auto r = vsfRun({"poisson", "--which", "zero"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto rows = parseCsv(r.out);
  const int res = column(rows[0], "residual");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][res], "0");

  r = vsfRun({"poisson", "--which", "hreg"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  rows = parseCsv(r.out);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][res]), 1e-8);
}

TEST(Poisson, UnknownSummand) { EXPECT_EQ(vsfRun({"poisson", "--which", "cosine"}).code, kExitUsage); }

TEST(Voronoi, PolyAsJson) {
  auto r = vsfRun({"voronoi", "--testfn", "poly", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["testFunction"], "poly");
  EXPECT_LT(j["residual"].get<double>(), 1e-6);
  EXPECT_LT(j["crossRouteGap"].get<double>(), 1e-6);
  EXPECT_GT(j["truncationN"].get<long>(), 0);
  EXPECT_FALSE(j["failed"].get<bool>());
}

TEST(Voronoi, FailureContract) {
  EXPECT_EQ(vsfRun({"voronoi", "--testfn", "poly", "--threshold", "1e-30"}).code, kExitVerificationFailed);
  EXPECT_EQ(vsfRun({"voronoi", "--testfn", "gauss"}).code, kExitUsage);
}

TEST(Output, DeterministicAndFileSink) {
  const std::vector<std::string> args{"theta", "--t", "0.1,1,10", "--format", "json"};
  const auto first = vsfRun(args), second = vsfRun(args);
  ASSERT_EQ(first.code, kExitOk);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.out.find('\r'), std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "vsf_cli_test_divisor.csv";
  auto r = vsfRun({"divisor", "--limit", "10", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), "n,d,D\n1,1,1\n10,4,27\n");
  std::filesystem::remove(path);
}

TEST(Usage, HelpAndMissingCommand) {
  EXPECT_EQ(vsfRun({}).code, kExitUsage);
  EXPECT_EQ(vsfRun({"frobnicate"}).code, kExitUsage);
  auto help = vsfRun({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("voronoi"), std::string::npos);
}

}  // namespace
