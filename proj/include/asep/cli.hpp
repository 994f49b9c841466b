#ifndef ASEP_CLI_HPP_
#define ASEP_CLI_HPP_

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "asep/harness.hpp"
#include "asep/tracy_widom.hpp"

namespace asep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerificationFailed = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { kSimulate, kF2, kVerify };
enum class OutputFormat { kCsv, kJson, kBoth };

/// start:stop:step, inclusive of stop up to rounding.
struct SGrid {
  double start = -4.0;
  double stop = 4.0;
  double step = 0.25;

  std::vector<double> values() const;
  bool operator==(const SGrid&) const = default;
};

/// Throws UsageError on malformed text or step <= 0 or stop < start.
SGrid parse_grid(const std::string& text);

struct RunConfig {
  Subcommand subcommand = Subcommand::kSimulate;
  double p = 0.25;
  double q = 0.75;
  double v = 0.0;
  double t = 200.0;
  std::size_t trajectories = 2000;
  std::uint64_t seed = 1;
  SGrid grid;
  std::size_t order = 60;
  unsigned workers = 0;  // 0 = all cores
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::kBoth;

  bool operator==(const RunConfig&) const = default;
};

/// Parses `asep <subcommand> [flags]`. argv[0] is the program name.
/// Throws UsageError naming the violated constraint. The special
/// exception HelpRequested carries the help text.
RunConfig parse_config(const std::vector<std::string>& argv);

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments that reproduce the config through parse_config.
std::vector<std::string> to_argv(const RunConfig& config);

harness::EnsembleConfig ensemble_config(const RunConfig& config);

/// Decimal text with 17 significant digits ("%.17g").
std::string format_double(double value);

void write_currents_csv(std::ostream& out,
                        const harness::EnsembleSummary& summary);
std::string summary_json(const RunConfig& config,
                         const harness::EnsembleSummary& summary);
void write_f2_csv(std::ostream& out, const tw::DistributionTable& table);

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<std::pair<std::string, double>> statistics;
};

/// Oracle chi-square, strong law and event-identity suites.
std::vector<SuiteResult> run_verification(const RunConfig& config);
std::string verification_json(const RunConfig& config,
                              const std::vector<SuiteResult>& suites);

/// Executes a parsed config, writing files into config.out_dir. Returns the
/// process exit code. Progress goes to `log`.
int execute(const RunConfig& config, std::ostream& log);

/// Full command-line entry point.
int run_main(int argc, char** argv);

}  // namespace asep::cli

#endif  // ASEP_CLI_HPP_
