#include "asep/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace asep {

ModelParameters::ModelParameters(double p, double q) : p_(p), q_(q) {
  if (!(p >= 0.0) || !(q >= 0.0) || std::abs(p + q - 1.0) > 1e-12) {
    throw std::invalid_argument("jump probabilities must satisfy p, q >= 0 "
                                "and p + q = 1 (got p=" +
                                std::to_string(p) + ", q=" + std::to_string(q) +
                                ")");
  }
}

Engine make_stream(std::uint64_t master_seed, std::uint64_t trajectory_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(trajectory_index),
                    static_cast<std::uint32_t>(trajectory_index >> 32)};
  return Engine(seq);
}

ParticleConfiguration init_step(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("init_step: particle count must be >= 1");
  }
  ParticleConfiguration config;
  config.positions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    config.positions[i] = static_cast<Site>(i) + 1;
  }
  return config;
}

std::size_t truncation_size(double t_phys, Site x) {
  if (!(t_phys >= 0.0) || !std::isfinite(t_phys)) {
    throw std::invalid_argument("truncation_size: time must be finite and >= 0");
  }
  if (x > 0) {
    throw std::invalid_argument("truncation_size: site must be <= 0");
  }
  const double bulk = std::ceil(t_phys + 8.0 * std::sqrt(t_phys + 1.0));
  return static_cast<std::size_t>(bulk) + static_cast<std::size_t>(-x) + 1;
}

TrajectoryState make_trajectory(std::size_t n, std::uint64_t master_seed,
                                std::uint64_t trajectory_index,
                                Window window) {
  TrajectoryState state{init_step(n), make_stream(master_seed, trajectory_index),
                        window};
  if (!window.contains(state.configuration.positions.front()) ||
      !window.contains(state.configuration.positions.back())) {
    throw std::invalid_argument("make_trajectory: window must contain [1..n]");
  }
  return state;
}

namespace {

// Applies one attempted move of particle i. Blocked moves are no-ops.
inline void attempt_move(std::vector<Site>& pos, std::size_t i, bool right,
                         const Window& window) {
  const std::size_t n = pos.size();
  if (right) {
    const Site target = pos[i] + 1;
    if ((i + 1 == n || pos[i + 1] != target) && target <= window.hi) {
      pos[i] = target;
    }
  } else {
    const Site target = pos[i] - 1;
    if ((i == 0 || pos[i - 1] != target) && target >= window.lo) {
      pos[i] = target;
    }
  }
}

}  // namespace

double advance_event(TrajectoryState& state, const ModelParameters& params) {
  auto& config = state.configuration;
  const std::size_t n = config.size();
  std::exponential_distribution<double> wait(static_cast<double>(n));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::bernoulli_distribution go_right(params.p());

  const double dt = wait(state.rng);
  const std::size_t i = pick(state.rng);
  const bool right = go_right(state.rng);
  attempt_move(config.positions, i, right, state.window);
  config.clock += dt;
  ++config.event_count;
  return dt;
}

void run_to(TrajectoryState& state, double t_phys,
            const ModelParameters& params) {
  auto& config = state.configuration;
  if (!(t_phys >= config.clock)) {
    throw std::invalid_argument("run_to: target time " +
                                std::to_string(t_phys) +
                                " precedes current clock " +
                                std::to_string(config.clock));
  }
  if (t_phys == config.clock) return;
  const std::size_t n = config.size();
  std::exponential_distribution<double> wait(static_cast<double>(n));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::bernoulli_distribution go_right(params.p());

  auto& pos = config.positions;
  double clock = config.clock;
  std::uint64_t events = config.event_count;
  for (;;) {
    const double dt = wait(state.rng);
    if (clock + dt > t_phys) break;
    clock += dt;
    const std::size_t i = pick(state.rng);
    const bool right = go_right(state.rng);
    attempt_move(pos, i, right, state.window);
    ++events;
  }
  config.clock = t_phys;
  config.event_count = events;
}

std::size_t current_at(const ParticleConfiguration& config, Site x) {
  const auto& pos = config.positions;
  return static_cast<std::size_t>(
      std::upper_bound(pos.begin(), pos.end(), x) - pos.begin());
}

Site position_of(const ParticleConfiguration& config, std::size_t m) {
  if (m < 1 || m > config.size()) {
    throw std::out_of_range("position_of: rank " + std::to_string(m) +
                            " outside [1, " + std::to_string(config.size()) +
                            "]");
  }
  return config.positions[m - 1];
}

bool is_ordered(const ParticleConfiguration& config) {
  return std::adjacent_find(config.positions.begin(), config.positions.end(),
                            [](Site a, Site b) { return a >= b; }) ==
         config.positions.end();
}

}  // namespace asep
