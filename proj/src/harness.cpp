#include "asep/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <thread>

#include "asep/exact_oracle.hpp"
#include "asep/scaling.hpp"
#include "asep/tracy_widom.hpp"

namespace asep::harness {

namespace {

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls body(i) for i in [0, count) on up to `workers` threads.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::min<unsigned>(resolve_workers(workers),
                               static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count && !failed; i = next++) body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& thread : threads) thread.join();
  if (failure) std::rethrow_exception(failure);
}

void check_event_budget(std::size_t trajectories, std::size_t n, double t_phys) {
  const double expected = static_cast<double>(trajectories) *
                          static_cast<double>(n) * t_phys;
  if (expected > kMaxEvents) {
    throw ResourceCapExceeded(
        "run would need about " + std::to_string(expected) +
        " events (cap 1e10); lower the time or the number of trajectories");
  }
}

Site floor_site(double value) {
  constexpr double kLimit = 4e18;
  return static_cast<Site>(std::floor(std::clamp(value, -kLimit, kLimit)));
}

}  // namespace

double EnsembleConfig::physical_time() const {
  if (t == 0.0) return 0.0;
  return t / params.gamma();
}

Site EnsembleConfig::site() const { return floor_site(-v * t); }

void validate(const EnsembleConfig& config) {
  if (config.trajectories < 1) {
    throw std::invalid_argument("ensemble needs at least one trajectory");
  }
  if (!(std::abs(config.v) < 1.0)) {
    throw std::invalid_argument("scaled position must satisfy |v| < 1");
  }
  if (!(config.t >= 0.0) || !std::isfinite(config.t)) {
    throw std::invalid_argument("time must be finite and >= 0");
  }
  if (config.t > 0.0 && !(config.params.gamma() > 0.0)) {
    throw std::invalid_argument("limit-law run requires p < q");
  }
}

Ensemble simulate(const ModelParameters& params, std::size_t n, double t_phys,
                  std::size_t trajectories, std::uint64_t seed,
                  unsigned workers, Window window) {
  check_event_budget(trajectories, n, t_phys);
  Ensemble ensemble;
  ensemble.truncation = n;
  ensemble.physical_time = t_phys;
  ensemble.finals.resize(trajectories);
  parallel_for(trajectories, workers, [&](std::size_t i) {
    TrajectoryState state = make_trajectory(n, seed, i, window);
    run_to(state, t_phys, params);
    ensemble.finals[i] = std::move(state.configuration);
  });
  return ensemble;
}

Ensemble simulate_ensemble(const EnsembleConfig& config) {
  validate(config);
  const double t_phys = config.physical_time();
  const std::size_t n = truncation_size(t_phys, std::min<Site>(config.site(), 0));
  return simulate(config.params, n, t_phys, config.trajectories, config.seed,
                  config.workers);
}

std::int64_t total_current(const ParticleConfiguration& config, Site x) {
  const auto count = static_cast<std::int64_t>(current_at(config, x));
  return x > 0 ? count - x : count;
}

double normalize_current(double current, double v, double t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("normalize_current: t must be > 0");
  }
  const auto [a1, a2] = scaling::scaling_constants(v);
  return (current - a1 * t) / (a2 * std::cbrt(t));
}

EnsembleSummary summarize(const EnsembleConfig& config,
                          const Ensemble& ensemble) {
  EnsembleSummary summary;
  summary.truncation = ensemble.truncation;
  const Site x = config.site();
  summary.currents.reserve(ensemble.finals.size());
  for (const auto& final_config : ensemble.finals) {
    summary.currents.push_back(total_current(final_config, x));
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (config.t == 0.0) {
    summary.ks_distance = nan;
    summary.moments = {nan, nan, nan};
    summary.ecdf_on_grid.assign(config.s_grid.size(), nan);
    summary.limit_law_on_grid.assign(config.s_grid.size(), nan);
    return summary;
  }

  summary.normalized.reserve(summary.currents.size());
  for (const auto current : summary.currents) {
    summary.normalized.push_back(
        normalize_current(static_cast<double>(current), config.v, config.t));
  }
  const stats::EmpiricalCdf ecdf(summary.normalized);
  summary.ks_distance = stats::ks_distance(
      ecdf, [](double s) { return tw::limit_law_current(s); });
  summary.moments = stats::moments(summary.normalized);
  for (const double s : config.s_grid) {
    summary.ecdf_on_grid.push_back(ecdf(s));
    summary.limit_law_on_grid.push_back(tw::limit_law_current(s));
  }
  return summary;
}

EnsembleSummary run_ensemble(const EnsembleConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Ensemble ensemble = simulate_ensemble(config);
  EnsembleSummary summary = summarize(config, ensemble);
  summary.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return summary;
}

bool verify_event_identity(const ParticleConfiguration& config, Site x) {
  const std::size_t n = config.size();
  // Independent linear count; current_at uses binary search.
  std::size_t count = 0;
  for (const Site position : config.positions) {
    if (position <= x) ++count;
  }
  if (count != current_at(config, x)) return false;
  if (count == 0 && n > 0 && !(position_of(config, 1) > x)) return false;
  for (std::size_t m = 1; m <= n; ++m) {
    const bool at_least_m = count >= m;
    const bool m_th_left_of_x = position_of(config, m) <= x;
    if (at_least_m != m_th_left_of_x) return false;
    const bool next_right_of_x = m == n || position_of(config, m + 1) > x;
    const bool exactly_m = count == m;
    if (exactly_m != (m_th_left_of_x && next_right_of_x)) return false;
  }
  return true;
}

bool verify_count_identity(const Ensemble& ensemble, Site x) {
  const std::size_t n = ensemble.truncation;
  const std::size_t total = ensemble.finals.size();
  // at_most[m] = #{I <= m}; reached[m] = #{x_{m+1} <= x}.
  std::vector<std::size_t> current_hist(n + 1, 0);
  std::vector<std::size_t> reached(n, 0);
  for (const auto& config : ensemble.finals) {
    ++current_hist[current_at(config, x)];
    for (std::size_t m = 0; m < n; ++m) {
      if (config.positions[m] <= x) {
        ++reached[m];
      } else {
        break;
      }
    }
  }
  std::size_t at_most = 0;
  for (std::size_t m = 0; m < n; ++m) {
    at_most += current_hist[m];
    if (at_most != total - reached[m]) return false;
  }
  return true;
}

PositionFormResult position_form_check(const Ensemble& ensemble, double t,
                                       double sigma, double s) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("position_form_check: t must be > 0");
  }
  const auto [c1, c2] = scaling::kpz_constants(sigma);
  PositionFormResult result;
  result.m = static_cast<std::int64_t>(std::llround(sigma * t));
  if (result.m < 1 || static_cast<std::size_t>(result.m) > ensemble.truncation) {
    throw std::out_of_range("position_form_check: rank m=" +
                            std::to_string(result.m) + " outside [1, " +
                            std::to_string(ensemble.truncation) + "]");
  }
  result.threshold = floor_site(c1 * t + s * c2 * std::cbrt(t));
  std::size_t hits = 0;
  for (const auto& config : ensemble.finals) {
    if (position_of(config, static_cast<std::size_t>(result.m)) <=
        result.threshold) {
      ++hits;
    }
  }
  result.empirical =
      static_cast<double>(hits) / static_cast<double>(ensemble.finals.size());
  if (std::isinf(s)) {
    result.f2 = s > 0 ? 1.0 : 0.0;
  } else if (s > 8.0) {
    result.f2 = tw::f2_cdf(8.0).value;
  } else {
    result.f2 = tw::f2_cdf(s).value;
  }
  return result;
}

PositionFormResult position_form_check(const EnsembleConfig& config,
                                       double sigma, double s) {
  return position_form_check(simulate_ensemble(config), config.t, sigma, s);
}

StrongLawResult strong_law_check(const EnsembleConfig& config, double c) {
  if (config.trajectories < 1) {
    throw std::invalid_argument("strong_law_check: need trajectories >= 1");
  }
  if (!(config.t > 0.0)) {
    throw std::invalid_argument("strong_law_check: t must be > 0");
  }
  StrongLawResult result;
  result.expected = scaling::strong_law_density(c, config.params.gamma());
  const Site x = floor_site(-c * config.t);
  const std::size_t n = truncation_size(config.t, std::min<Site>(x, 0));
  const Ensemble ensemble =
      simulate(config.params, n, config.t, config.trajectories, config.seed,
               config.workers);
  std::vector<double> rates;
  rates.reserve(ensemble.finals.size());
  for (const auto& final_config : ensemble.finals) {
    rates.push_back(static_cast<double>(total_current(final_config, x)) /
                    config.t);
  }
  const auto m = stats::moments(rates);
  result.mean = m.mean;
  result.standard_error =
      std::sqrt(m.variance / static_cast<double>(rates.size()));
  result.deviation = std::abs(result.mean - result.expected);
  return result;
}

OracleAgreement oracle_agreement(const ModelParameters& params, std::size_t n,
                                 Window window, double t_phys,
                                 std::size_t trajectories, std::uint64_t seed,
                                 unsigned workers) {
  const auto gen = oracle::build_generator(window, n, params);
  const auto law = oracle::transient_distribution(gen, t_phys);
  const Ensemble ensemble =
      simulate(params, n, t_phys, trajectories, seed, workers, window);
  std::vector<std::size_t> counts(gen.space.size(), 0);
  for (const auto& config : ensemble.finals) {
    ++counts[gen.space.index_of(config.positions)];
  }
  OracleAgreement out;
  out.chi_square = stats::chi_square_test(counts, law.probabilities);
  out.boundary_certificate = law.boundary_certificate;
  out.states = gen.space.size();
  return out;
}

}  // namespace asep::harness
