#include "vsf/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <variant>

#include "vsf/arith.hpp"
#include "vsf/constants.hpp"
#include "vsf/errors.hpp"
#include "vsf/poisson.hpp"
#include "vsf/test_function.hpp"
#include "vsf/theta.hpp"
#include "vsf/voronoi.hpp"

namespace vsf::cli {

namespace {

using Cell = std::variant<double, std::int64_t, std::uint64_t, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // a single record prints as a JSON object instead of an array
  bool singleRecord = false;
};

std::string formatCell(const Cell& cell, bool json) {
  return std::visit(
      [json](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return json ? "null" : fmt::format("{}", v);
          return fmt::format("{:.17g}", v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (json) return nlohmann::json(v).dump();
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char c : v) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
          return quoted + "\"";
        } else {
          return fmt::format("{}", v);
        }
      },
      cell);
}

void writeCsv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << formatCell(row[i], false);
    out << '\n';
  }
}

void writeJson(const Table& table, std::ostream& out) {
  auto record = [&](const std::vector<Cell>& row) {
    std::string s = "{";
    for (std::size_t i = 0; i < row.size(); ++i) {
      s += fmt::format("{}\"{}\": {}", i ? ", " : "", table.columns[i], formatCell(row[i], true));
    }
    return s + "}";
  };
  if (table.singleRecord && table.rows.size() == 1) {
    out << record(table.rows.front()) << '\n';
    return;
  }
  out << "[\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << "  " << record(table.rows[r]) << (r + 1 < table.rows.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

struct CommonOptions {
  std::string format = "csv";
  std::string outPath;
};

void addCommon(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", common.outPath, "Write the table to this file instead of stdout");
}

// Usage problems detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> logGrid(double lo, double hi, int count) {
  if (count < 1) throw UsageError("grid needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::pow(hi / lo, double(i) / (count - 1));
  return grid;
}

struct Outcome {
  Table table;
  bool passed = true;
};

Outcome divisorCommand(std::uint64_t limit, std::vector<std::uint64_t> checkpoints) {
  if (checkpoints.empty()) {
    for (std::uint64_t p = 1; p <= limit; p *= 10) {
      checkpoints.push_back(p);
      if (p > limit / 10) break;
    }
    if (checkpoints.back() != limit) checkpoints.push_back(limit);
  }
  for (auto c : checkpoints) {
    if (c < 1 || c > limit) throw UsageError(fmt::format("checkpoint {} outside [1, {}]", c, limit));
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  const auto table = arith::divisorSieve(limit);
  Outcome o;
  o.table.columns = {"n", "d", "D"};
  for (auto c : checkpoints) o.table.rows.push_back({c, std::uint64_t(table[c]), table.partialSum(c)});
  return o;
}

Outcome deltaScanCommand(std::uint64_t xmax, double envelope) {
  Outcome o;
  o.table.columns = {"x", "bigD", "delta", "normalizedDelta"};
  for (auto x : arith::logSpacedIntegers(2, xmax)) {
    const auto s = arith::deltaTerm(x);
    const double normalized = s.normalizedDelta.value_or(0.0);
    o.table.rows.push_back({s.x, s.bigD, s.delta, normalized});
    if (std::abs(normalized) > envelope) o.passed = false;
  }
  return o;
}

Outcome thetaCommand(const std::vector<double>& grid, double tol, double threshold) {
  Outcome o;
  o.table.columns = {"t", "thetaDirect", "thetaWigert", "thetaWeyl", "thetaOsc", "residualWigert", "residualDecomp"};
  for (double t : grid) {
    const auto d = theta::decompose(t, tol);
    o.table.rows.push_back({d.t, d.thetaDirect, d.thetaWigert, d.thetaWeyl, d.thetaOsc, d.residualWigert,
                            d.residualDecomp});
    if (!(d.residualWigert <= threshold && d.residualDecomp <= threshold)) o.passed = false;
  }
  return o;
}

std::vector<double> defaultAlphaGrid(const std::string& which) {
  if (which != "eicombo") return {0.5, 1.0, 2.0, 5.0};
  // the lattice spacings 4 pi^2 m / t of the oscillatory theta term
  std::vector<double> grid;
  for (int m : {1, 2}) {
    for (double t : {0.5, 1.0, 2.0}) grid.push_back(kFourPiSquared * m / t);
  }
  return grid;
}

Outcome poissonCommand(const std::string& which, const std::vector<double>& alphas, double tol, double threshold) {
  const auto spec = poisson::summandByName(which);
  poisson::validate(spec);
  Outcome o;
  o.table.columns = {"alpha", "lhs", "rhs", "residual", "lhsTerms", "rhsTerms"};
  for (double alpha : alphas) {
    const auto lhs = poisson::lhsEvaluate(spec, alpha, tol);
    const auto rhs = poisson::rhsEvaluate(spec, alpha, tol);
    const double residual = std::abs(lhs.value - rhs.value);
    o.table.rows.push_back({alpha, lhs.value, rhs.value, residual, std::int64_t(lhs.terms), std::int64_t(rhs.terms)});
    if (!(residual <= threshold)) o.passed = false;
  }
  return o;
}

Outcome voronoiCommand(const std::string& testfn, double tol, double threshold) {
  const auto r = voronoi::evaluate(voronoi::galleryFunction(testfn), tol);
  Outcome o;
  o.table.singleRecord = true;
  o.table.columns = {"testFunction", "lhs",          "lhsViaTheta",   "weylTerm",       "oscTerm",
                     "oscTermViaEi", "residual",     "crossRouteGap", "lhsRouteGap",    "truncationN",
                     "oscTruncationN", "tolerance",  "failed",        "failure"};
  o.table.rows.push_back({r.testFunction, r.lhs, r.lhsViaTheta, r.weylTerm, r.oscTerm, r.oscTermViaEi, r.residual,
                          r.crossRouteGap, r.lhsRouteGap, std::int64_t(r.truncationN), std::int64_t(r.oscTruncationN),
                          r.tolerance, r.failed, r.failure});
  o.passed = !r.failed && r.residual <= threshold && r.crossRouteGap <= threshold && r.lhsRouteGap <= threshold;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of the Voronoi summation formula for the divisor function", "vsf"};
  app.require_subcommand(1);

  CommonOptions common;
  std::function<Outcome()> action;

  auto* divisor = app.add_subcommand("divisor", "d(n) and D(n) at checkpoints");
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> checkpoints;
  divisor->add_option("--limit", limit, "Sieve limit")->required()->check(CLI::Range(std::uint64_t{1}, arith::kMaxSieveLimit));
  divisor->add_option("--checkpoints", checkpoints, "Comma-separated n values (default: powers of ten and the limit)")
      ->delimiter(',');
  addCommon(divisor, common);
  divisor->callback([&] { action = [&] { return divisorCommand(limit, checkpoints); }; });

  auto* delta = app.add_subcommand("delta-scan", "Delta(x) and Delta(x)/(x^{1/3} ln x) at log-spaced x");
  std::uint64_t xmax = 0;
  double envelope = 1.0;
  delta->add_option("--xmax", xmax, "Largest x")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1'000'000'000'000}));
  delta->add_option("--envelope", envelope, "Exit 1 when a normalized value exceeds this")->capture_default_str();
  addCommon(delta, common);
  delta->callback([&] { action = [&] { return deltaScanCommand(xmax, envelope); }; });

  auto* thetaCmd = app.add_subcommand("theta", "Direct, Wigert and Weyl + oscillatory forms of Theta(t)");
  std::vector<double> tValues;
  double tmin = 0.05, tmax = 20.0;
  int count = 25;
  double thetaTol = 1e-10, thetaThreshold = 1e-8;
  thetaCmd->add_option("--t", tValues, "Comma-separated t values (overrides the log grid)")->delimiter(',');
  thetaCmd->add_option("--tmin", tmin)->capture_default_str();
  thetaCmd->add_option("--tmax", tmax)->capture_default_str();
  thetaCmd->add_option("--count", count, "Log-grid size")->capture_default_str();
  thetaCmd->add_option("--tol", thetaTol)->check(CLI::Range(1e-13, 1.0))->capture_default_str();
  thetaCmd->add_option("--threshold", thetaThreshold, "Largest accepted residual")->capture_default_str();
  addCommon(thetaCmd, common);
  thetaCmd->callback([&] {
    action = [&] {
      auto grid = tValues.empty() ? logGrid(tmin, tmax, count) : tValues;
      for (double t : grid) {
        if (!(t > 0.0) || !std::isfinite(t)) throw UsageError(fmt::format("t must be positive, got {}", t));
      }
      return thetaCommand(grid, thetaTol, thetaThreshold);
    };
  });

  auto* poissonCmd = app.add_subcommand("poisson", "Both sides of the Dixon-Ferrar Poisson formula");
  std::string which;
  std::vector<double> alphas;
  double poissonTol = 1e-10, poissonThreshold = 1e-8;
  poissonCmd->add_option("--which", which, "Summand")->required()->check(CLI::IsMember({"hreg", "eicombo", "zero"}));
  poissonCmd->add_option("--alpha", alphas, "Comma-separated lattice spacings")->delimiter(',');
  poissonCmd->add_option("--tol", poissonTol)->check(CLI::Range(1e-13, 1.0))->capture_default_str();
  poissonCmd->add_option("--threshold", poissonThreshold)->capture_default_str();
  addCommon(poissonCmd, common);
  poissonCmd->callback([&] {
    action = [&] {
      auto grid = alphas.empty() ? defaultAlphaGrid(which) : alphas;
      for (double a : grid) {
        if (!(a > 0.0) || !std::isfinite(a)) throw UsageError(fmt::format("alpha must be positive, got {}", a));
      }
      return poissonCommand(which, grid, poissonTol, poissonThreshold);
    };
  });

  auto* voronoiCmd = app.add_subcommand("voronoi", "Two-sided Voronoi summation for a gallery test function");
  std::string testfn;
  double voronoiTol = 1e-6, voronoiThreshold = 1e-6;
  voronoiCmd->add_option("--testfn", testfn, "Test function")->required()->check(CLI::IsMember({"poly", "bump", "frac"}));
  voronoiCmd->add_option("--tol", voronoiTol)->check(CLI::Range(1e-13, 1.0))->capture_default_str();
  voronoiCmd->add_option("--threshold", voronoiThreshold)->capture_default_str();
  addCommon(voronoiCmd, common);
  voronoiCmd->callback([&] { action = [&] { return voronoiCommand(testfn, voronoiTol, voronoiThreshold); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Outcome outcome;
  try {
    outcome = action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!common.outPath.empty()) {
    file.open(common.outPath, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << common.outPath << '\n';
      return kExitUsage;
    }
    sink = &file;
  }
  if (common.format == "json") {
    writeJson(outcome.table, *sink);
  } else {
    writeCsv(outcome.table, *sink);
  }
  sink->flush();
  if (!outcome.passed) {
    err << "verification failed: a checked value exceeds its threshold\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

}  // namespace vsf::cli
