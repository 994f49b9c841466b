#include "asep/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "asep/scaling.hpp"

#ifndef ASEP_VERSION
#define ASEP_VERSION "0.0.0"
#endif

namespace asep::cli {

namespace {

using nlohmann::json;

const char* subcommand_name(Subcommand sub) {
  switch (sub) {
    case Subcommand::kSimulate:
      return "simulate";
    case Subcommand::kF2:
      return "f2";
    case Subcommand::kVerify:
      return "verify";
  }
  return "simulate";
}

const char* format_name(OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kBoth:
      return "both";
  }
  return "both";
}

std::string grid_text(const SGrid& grid) {
  return format_double(grid.start) + ":" + format_double(grid.stop) + ":" +
         format_double(grid.step);
}

// JSON numbers; NaN becomes null.
json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

// Suite parameters for `verify`.
constexpr std::size_t kOracleParticles = 3;
constexpr Window kOracleWindow{-3, 5};
constexpr double kOracleTime = 0.5;
constexpr std::size_t kOracleTrajectories = 100000;
constexpr double kSignificance = 0.01;
constexpr double kStandardErrors = 3.0;

}  // namespace

std::vector<double> SGrid::values() const {
  std::vector<double> out;
  const double span = (stop - start) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(start + static_cast<double>(i) * step);
  }
  return out;
}

SGrid parse_grid(const std::string& text) {
  SGrid grid;
  std::stringstream stream(text);
  std::string part;
  std::vector<double> fields;
  while (std::getline(stream, part, ':')) {
    try {
      std::size_t used = 0;
      fields.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("s-grid '" + text + "' must be start:stop:step numbers");
    }
  }
  if (fields.size() != 3) {
    throw UsageError("s-grid '" + text + "' must be start:stop:step");
  }
  grid.start = fields[0];
  grid.stop = fields[1];
  grid.step = fields[2];
  if (!(grid.step > 0.0)) throw UsageError("s-grid step must be > 0");
  if (!(grid.stop >= grid.start)) {
    throw UsageError("s-grid stop must be >= start");
  }
  return grid;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

RunConfig parse_config(const std::vector<std::string>& argv) {
  RunConfig config;
  CLI::App app{"ASEP current fluctuations: simulation, Tracy-Widom tables and "
               "verification suites",
               "asep"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string grid = grid_text(config.grid);
  std::string format = format_name(config.format);
  app.add_option("--p", config.p, "right-jump probability");
  app.add_option("--q", config.q, "left-jump probability");
  app.add_option("--v", config.v, "scaled position, |v| < 1");
  app.add_option("--time", config.t, "KPZ time t (physical time is t/gamma)");
  app.add_option("--trajectories", config.trajectories, "ensemble size");
  app.add_option("--seed", config.seed, "master seed");
  app.add_option("--s", grid, "s-grid start:stop:step");
  app.add_option("--order", config.order, "Nystrom quadrature order");
  app.add_option("--workers", config.workers, "worker threads (0 = all cores)");
  app.add_option("--out", config.out_dir, "output directory");
  app.add_option("--format", format, "csv | json | both");

  auto* simulate = app.add_subcommand("simulate", "run the current ensemble");
  auto* f2 = app.add_subcommand("f2", "tabulate F2 and the current limit law");
  auto* verify = app.add_subcommand("verify", "run the certification suites");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1),
                                argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& error) {
    throw UsageError(error.what());
  }

  if (simulate->parsed()) config.subcommand = Subcommand::kSimulate;
  if (f2->parsed()) config.subcommand = Subcommand::kF2;
  if (verify->parsed()) config.subcommand = Subcommand::kVerify;

  config.grid = parse_grid(grid);
  if (format == "csv") {
    config.format = OutputFormat::kCsv;
  } else if (format == "json") {
    config.format = OutputFormat::kJson;
  } else if (format == "both") {
    config.format = OutputFormat::kBoth;
  } else {
    throw UsageError("--format must be csv, json or both");
  }

  if (!(config.p >= 0.0) || !(config.q >= 0.0) ||
      std::abs(config.p + config.q - 1.0) > 1e-12) {
    throw UsageError("jump probabilities must satisfy p, q >= 0 and p + q = 1");
  }
  if (!(std::abs(config.v) < 1.0)) {
    throw UsageError("scaled position must satisfy |v| < 1");
  }
  if (!(config.t >= 0.0) || !std::isfinite(config.t)) {
    throw UsageError("--time must be finite and >= 0");
  }
  if (config.trajectories < 1) {
    throw UsageError("--trajectories must be >= 1");
  }
  if (config.order < 10) throw UsageError("--order must be >= 10");
  if (config.subcommand != Subcommand::kF2 && !(config.p < config.q)) {
    throw UsageError("limit-law run requires p < q");
  }
  return config;
}

std::vector<std::string> to_argv(const RunConfig& config) {
  return {"asep",
          subcommand_name(config.subcommand),
          "--p",
          format_double(config.p),
          "--q",
          format_double(config.q),
          "--v",
          format_double(config.v),
          "--time",
          format_double(config.t),
          "--trajectories",
          std::to_string(config.trajectories),
          "--seed",
          std::to_string(config.seed),
          "--s",
          grid_text(config.grid),
          "--order",
          std::to_string(config.order),
          "--workers",
          std::to_string(config.workers),
          "--out",
          config.out_dir,
          "--format",
          format_name(config.format)};
}

harness::EnsembleConfig ensemble_config(const RunConfig& config) {
  harness::EnsembleConfig out;
  out.params = ModelParameters(config.p, config.q);
  out.v = config.v;
  out.t = config.t;
  out.trajectories = config.trajectories;
  out.seed = config.seed;
  out.s_grid = config.grid.values();
  out.workers = config.workers;
  return out;
}

void write_currents_csv(std::ostream& out,
                        const harness::EnsembleSummary& summary) {
  out << "trajectory_id,current,s_normalized\n";
  for (std::size_t i = 0; i < summary.currents.size(); ++i) {
    out << i << ',' << summary.currents[i] << ',';
    if (i < summary.normalized.size()) {
      out << format_double(summary.normalized[i]);
    }
    out << '\n';
  }
}

namespace {

// Experiment-defining flags only: worker count and output location do not
// change results.
json config_echo(const RunConfig& config) {
  auto args = to_argv(config);
  json echo = json::array();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--workers" || args[i] == "--out") {
      ++i;
      continue;
    }
    echo.push_back(args[i]);
  }
  return echo;
}

}  // namespace

std::string summary_json(const RunConfig& config,
                         const harness::EnsembleSummary& summary) {
  json doc;
  doc["params"] = {{"p", config.p}, {"q", config.q}};
  doc["v"] = config.v;
  doc["t"] = config.t;
  doc["gamma"] = config.q - config.p;
  doc["N_truncation"] = summary.truncation;
  doc["M"] = config.trajectories;
  doc["ks_distance"] = number(summary.ks_distance);
  doc["moments"] = {{"mean", number(summary.moments.mean)},
                    {"var", number(summary.moments.variance)},
                    {"skew", number(summary.moments.skewness)}};
  doc["seed"] = config.seed;
  doc["version"] = ASEP_VERSION;
  json grid = json::array();
  const auto s_values = config.grid.values();
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    grid.push_back({{"s", s_values[i]},
                    {"ecdf", number(summary.ecdf_on_grid[i])},
                    {"limit_law", number(summary.limit_law_on_grid[i])}});
  }
  doc["cdf_grid"] = std::move(grid);
  doc["config"] = config_echo(config);
  return doc.dump(2) + "\n";
}

void write_f2_csv(std::ostream& out, const tw::DistributionTable& table) {
  out << "s,F2,limit_law\n";
  for (std::size_t i = 0; i < table.s_values.size(); ++i) {
    out << format_double(table.s_values[i]) << ',' << format_double(table.f2[i])
        << ',' << format_double(table.limit_law[i]) << '\n';
  }
}

std::vector<SuiteResult> run_verification(const RunConfig& config) {
  const ModelParameters params(config.p, config.q);
  std::vector<SuiteResult> suites;

  {
    const auto agreement = harness::oracle_agreement(
        params, kOracleParticles, kOracleWindow, kOracleTime,
        kOracleTrajectories, config.seed, config.workers);
    SuiteResult suite{"oracle_chi_square", false, {}};
    suite.passed = agreement.chi_square.p_value >= kSignificance;
    suite.statistics = {
        {"chi_square", agreement.chi_square.statistic},
        {"degrees_of_freedom",
         static_cast<double>(agreement.chi_square.degrees_of_freedom)},
        {"p_value", agreement.chi_square.p_value},
        {"boundary_certificate", agreement.boundary_certificate},
        {"states", static_cast<double>(agreement.states)},
        {"trajectories", static_cast<double>(kOracleTrajectories)}};
    suites.push_back(std::move(suite));
  }

  {
    harness::EnsembleConfig strong = ensemble_config(config);
    SuiteResult suite{"strong_law", true, {}};
    const double gamma = params.gamma();
    for (const double c : {0.0, gamma}) {
      const auto result = harness::strong_law_check(strong, c);
      const bool ok =
          result.deviation <= kStandardErrors * result.standard_error;
      suite.passed = suite.passed && ok;
      const std::string tag = c == 0.0 ? "c0_" : "cgamma_";
      suite.statistics.emplace_back(tag + "mean", result.mean);
      suite.statistics.emplace_back(tag + "expected", result.expected);
      suite.statistics.emplace_back(tag + "standard_error",
                                    result.standard_error);
      suite.statistics.emplace_back(tag + "deviation", result.deviation);
    }
    suites.push_back(std::move(suite));
  }

  {
    const harness::EnsembleConfig limit = ensemble_config(config);
    const auto ensemble = harness::simulate_ensemble(limit);
    const Site x = limit.site();
    std::size_t passing = 0;
    for (const auto& final_config : ensemble.finals) {
      if (harness::verify_event_identity(final_config, x)) ++passing;
    }
    const bool counts = harness::verify_count_identity(ensemble, x);
    SuiteResult suite{"event_identity", false, {}};
    suite.passed = passing == ensemble.finals.size() && counts;
    suite.statistics = {
        {"trajectories", static_cast<double>(ensemble.finals.size())},
        {"passing", static_cast<double>(passing)},
        {"count_identity", counts ? 1.0 : 0.0}};
    suites.push_back(std::move(suite));
  }
  return suites;
}

std::string verification_json(const RunConfig& config,
                              const std::vector<SuiteResult>& suites) {
  json doc;
  doc["version"] = ASEP_VERSION;
  doc["seed"] = config.seed;
  doc["params"] = {{"p", config.p}, {"q", config.q}};
  bool all = true;
  json list = json::array();
  for (const auto& suite : suites) {
    json stats = json::object();
    for (const auto& [key, value] : suite.statistics) stats[key] = number(value);
    list.push_back({{"name", suite.name},
                    {"passed", suite.passed},
                    {"statistics", stats}});
    all = all && suite.passed;
  }
  doc["suites"] = std::move(list);
  doc["passed"] = all;
  doc["config"] = config_echo(config);
  return doc.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

int execute(const RunConfig& config, std::ostream& log) {
  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             ": " + ec.message());
  }
  const bool csv = config.format != OutputFormat::kJson;
  const bool json_out = config.format != OutputFormat::kCsv;

  switch (config.subcommand) {
    case Subcommand::kSimulate: {
      const auto summary = harness::run_ensemble(ensemble_config(config));
      if (csv) {
        std::ostringstream text;
        write_currents_csv(text, summary);
        write_file(dir / "currents.csv", text.str());
      }
      if (json_out) write_file(dir / "summary.json", summary_json(config, summary));
      log << "simulate: M=" << config.trajectories << " N=" << summary.truncation
          << " ks_distance=" << format_double(summary.ks_distance)
          << " wall_seconds=" << summary.wall_seconds << '\n';
      return kExitOk;
    }
    case Subcommand::kF2: {
      const auto grid = config.grid.values();
      const auto table = tw::make_distribution_table(grid, config.order);
      std::ostringstream text;
      write_f2_csv(text, table);
      write_file(dir / "f2.csv", text.str());
      log << "f2: " << grid.size() << " points written to "
          << (dir / "f2.csv").string() << '\n';
      return kExitOk;
    }
    case Subcommand::kVerify: {
      const auto suites = run_verification(config);
      write_file(dir / "verify.json", verification_json(config, suites));
      bool all = true;
      for (const auto& suite : suites) {
        log << (suite.passed ? "PASS " : "FAIL ") << suite.name;
        for (const auto& [key, value] : suite.statistics) {
          log << ' ' << key << '=' << format_double(value);
        }
        log << '\n';
        all = all && suite.passed;
      }
      return all ? kExitOk : kExitVerificationFailed;
    }
  }
  return kExitOk;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& help) {
    std::cout << help.what();
    return kExitOk;
  } catch (const UsageError& error) {
    std::cerr << "usage error: " << error.what() << '\n';
    return kExitUsage;
  }
  try {
    return execute(config, std::cerr);
  } catch (const harness::ResourceCapExceeded& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace asep::cli
