#ifndef ASEP_HARNESS_HPP_
#define ASEP_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "asep/model.hpp"
#include "asep/statistics.hpp"

namespace asep::harness {

/// Thrown when the expected event count of a run exceeds 1e10.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMaxEvents = 1e10;

/// Ensemble for the current limit law. t is the KPZ time; the process runs
/// for physical time t / gamma and the current is read at floor(-v t).
struct EnsembleConfig {
  ModelParameters params = ModelParameters(0.25, 0.75);
  double v = 0.0;
  double t = 200.0;
  std::size_t trajectories = 2000;
  std::uint64_t seed = 1;
  std::vector<double> s_grid;
  unsigned workers = 1;

  double physical_time() const;
  Site site() const;
};

/// Throws std::invalid_argument unless M >= 1, |v| < 1, t >= 0 and, for
/// t > 0, gamma > 0.
void validate(const EnsembleConfig& config);

/// Final configurations of an ensemble, stored by trajectory index.
struct Ensemble {
  std::size_t truncation = 0;
  double physical_time = 0.0;
  std::vector<ParticleConfiguration> finals;
};

/// Runs `trajectories` independent step-initial trajectories of n particles
/// to t_phys. Trajectory i uses substream (seed, i), so the result does not
/// depend on the worker count.
Ensemble simulate(const ModelParameters& params, std::size_t n, double t_phys,
                  std::size_t trajectories, std::uint64_t seed,
                  unsigned workers, Window window = {});

/// Ensemble for a limit-law config: N = truncation_size(t/gamma, floor(-vt)).
Ensemble simulate_ensemble(const EnsembleConfig& config);

/// Total current at x: particles at or left of x, less the x particles that
/// started in [1, x] when x > 0.
std::int64_t total_current(const ParticleConfiguration& config, Site x);

/// (I - a1 t) / (a2 t^{1/3}) with (a1, a2) = scaling_constants(v).
double normalize_current(double current, double v, double t);

struct EnsembleSummary {
  std::vector<std::int64_t> currents;
  std::vector<double> normalized;  // empty when t == 0
  double ks_distance = 0.0;        // NaN when t == 0
  stats::Moments moments;          // NaN fields when t == 0
  std::vector<double> ecdf_on_grid;       // empirical CDF at s_grid
  std::vector<double> limit_law_on_grid;  // 1 - F2(-s) at s_grid
  std::size_t truncation = 0;
  double wall_seconds = 0.0;
};

/// Summary statistics of an already simulated ensemble.
EnsembleSummary summarize(const EnsembleConfig& config, const Ensemble& ensemble);

/// simulate_ensemble + summarize.
EnsembleSummary run_ensemble(const EnsembleConfig& config);

/// Exact pathwise check that I(x) >= m iff x_m <= x for every m, and that
/// I(x) == m exactly when x_m <= x < x_{m+1} (x_{N+1} = +inf).
bool verify_event_identity(const ParticleConfiguration& config, Site x);

/// Count form over an ensemble: #{I(x) <= m} == M - #{x_{m+1} <= x} for
/// every m in [0, N-1].
bool verify_count_identity(const Ensemble& ensemble, Site x);

struct PositionFormResult {
  std::int64_t m = 0;
  Site threshold = 0;
  double empirical = 0.0;
  double f2 = 0.0;
};

/// Fraction of trajectories with x_m <= floor(c1 t + s c2 t^{1/3}), where
/// m = round(sigma t), against F2(s). The ensemble must have been run to
/// t / gamma.
PositionFormResult position_form_check(const Ensemble& ensemble, double t,
                                       double sigma, double s);

/// Convenience overload that simulates the ensemble from config.
PositionFormResult position_form_check(const EnsembleConfig& config,
                                       double sigma, double s);

struct StrongLawResult {
  double mean = 0.0;            // sample mean of I(floor(-c t), t) / t
  double standard_error = 0.0;
  double expected = 0.0;        // (gamma - c)^2 / (4 gamma)
  double deviation = 0.0;       // |mean - expected|
};

/// Runs physical time config.t (no 1/gamma change) and reads the current at
/// floor(-c t).
StrongLawResult strong_law_check(const EnsembleConfig& config, double c);

struct OracleAgreement {
  stats::ChiSquareResult chi_square;
  double boundary_certificate = 0.0;
  std::size_t states = 0;
};

/// Chi-square comparison of simulated final configurations against the
/// uniformization law, both on the same window.
OracleAgreement oracle_agreement(const ModelParameters& params, std::size_t n,
                                 Window window, double t_phys,
                                 std::size_t trajectories, std::uint64_t seed,
                                 unsigned workers);

}  // namespace asep::harness

#endif  // ASEP_HARNESS_HPP_
