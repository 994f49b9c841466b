#include "asep/exact_oracle.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace asep::oracle {

namespace {

// C(width, k), or kMaxStates + 1 once it exceeds the cap.
std::size_t capped_binomial(std::size_t width, std::size_t k) {
  if (k > width) return 0;
  double value = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    value = value * static_cast<double>(width - k + i) / static_cast<double>(i);
    if (value > static_cast<double>(kMaxStates)) return kMaxStates + 1;
  }
  return static_cast<std::size_t>(std::llround(value));
}

// P(Poisson(lambda) >= k).
double poisson_tail(double lambda, std::int64_t k) {
  if (k <= 0) return 1.0;
  if (lambda <= 0.0) return 0.0;
  return boost::math::gamma_p(static_cast<double>(k), lambda);
}

}  // namespace

StateSpace::StateSpace(Window window, std::size_t n_particles)
    : window_(window), n_particles_(n_particles) {
  if (n_particles == 0) {
    throw std::invalid_argument("StateSpace: need at least one particle");
  }
  if (window.lo > window.hi) {
    throw std::invalid_argument("StateSpace: empty window");
  }
  const auto width = static_cast<std::size_t>(window.hi - window.lo + 1);
  const std::size_t count = capped_binomial(width, n_particles);
  if (count > kMaxStates) {
    throw std::length_error("StateSpace: more than " +
                            std::to_string(kMaxStates) +
                            " states; shrink the window or particle count");
  }
  states_.reserve(count);

  std::vector<Site> current(n_particles);
  for (std::size_t i = 0; i < n_particles; ++i) {
    current[i] = window.lo + static_cast<Site>(i);
  }
  // Highest site particle i can occupy.
  const auto limit = [&](std::size_t i) {
    return window.hi - static_cast<Site>(n_particles - 1 - i);
  };
  while (true) {
    index_.emplace(current, states_.size());
    states_.push_back(current);
    // Advance the right-most particle that still has room.
    std::size_t i = n_particles;
    while (i > 0 && current[i - 1] == limit(i - 1)) --i;
    if (i == 0) return;
    --i;
    ++current[i];
    for (std::size_t j = i + 1; j < n_particles; ++j) {
      current[j] = current[j - 1] + 1;
    }
  }
}

std::size_t StateSpace::index_of(const std::vector<Site>& positions) const {
  const auto it = index_.find(positions);
  if (it == index_.end()) {
    throw std::out_of_range("StateSpace: configuration not in state space");
  }
  return it->second;
}

GeneratorMatrix build_generator(Window window, std::size_t n_particles,
                                const ModelParameters& params) {
  StateSpace space(window, n_particles);
  const std::vector<Site> initial = init_step(n_particles).positions;
  if (!space.contains(initial)) {
    throw std::invalid_argument(
        "build_generator: window must contain the initial state [1..n]");
  }
  const std::size_t size = space.size();
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size),
                                                static_cast<Eigen::Index>(size));
  for (std::size_t a = 0; a < size; ++a) {
    const auto& state = space.state(a);
    double exit = 0.0;
    for (std::size_t i = 0; i < n_particles; ++i) {
      for (const int direction : {+1, -1}) {
        const double rate = direction > 0 ? params.p() : params.q();
        if (rate == 0.0) continue;
        const Site target = state[i] + direction;
        if (!window.contains(target)) continue;
        const bool blocked =
            direction > 0 ? (i + 1 < n_particles && state[i + 1] == target)
                          : (i > 0 && state[i - 1] == target);
        if (blocked) continue;
        auto next = state;
        next[i] = target;
        const auto b = space.index_of(next);
        rates(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            rate;
        exit += rate;
      }
    }
    rates(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = -exit;
  }
  const std::size_t initial_index = space.index_of(initial);
  return GeneratorMatrix{std::move(space), params, std::move(rates),
                         static_cast<double>(n_particles), initial_index};
}

double boundary_certificate(const GeneratorMatrix& gen, double t_phys) {
  const auto& window = gen.space.window();
  const auto n = static_cast<Site>(gen.space.n_particles());
  // Couple both processes through the same clocks. Order is preserved, so
  // the first attempt across the left edge is made by particle 1 (it starts
  // at 1 and needs >= 2 - lo left attempts) and across the right edge by
  // particle n (needs >= hi + 1 - n right attempts).
  const Site left_jumps = 2 - window.lo;
  const Site right_jumps = window.hi + 1 - n;
  return std::min(1.0, poisson_tail(gen.params.q() * t_phys, left_jumps) +
                           poisson_tail(gen.params.p() * t_phys, right_jumps));
}

TransientLaw transient_distribution(const GeneratorMatrix& gen, double t_phys) {
  if (!(t_phys >= 0.0) || !std::isfinite(t_phys)) {
    throw std::invalid_argument("transient_distribution: t must be >= 0");
  }
  constexpr double kTail = 1e-12;
  constexpr std::size_t kMaxTerms = 100000;

  const auto size = static_cast<Eigen::Index>(gen.space.size());
  const double lambda = gen.uniformization_rate;
  const double mean = lambda * t_phys;

  // Row-vector evolution pi_{k+1} = pi_k M with M = I + Q / Lambda.
  const Eigen::MatrixXd step_t =
      (Eigen::MatrixXd::Identity(size, size) + gen.rates / lambda).transpose();
  Eigen::VectorXd term = Eigen::VectorXd::Zero(size);
  term(static_cast<Eigen::Index>(gen.initial_index)) = 1.0;
  Eigen::VectorXd result = Eigen::VectorXd::Zero(size);

  TransientLaw law;
  double cumulative = 0.0;
  std::size_t k = 0;
  for (;; ++k) {
    if (k >= kMaxTerms) {
      throw std::length_error(
          "transient_distribution: uniformization series exceeded 1e5 terms");
    }
    const double weight =
        mean == 0.0 ? (k == 0 ? 1.0 : 0.0)
                    : std::exp(-mean + static_cast<double>(k) * std::log(mean) -
                               std::lgamma(static_cast<double>(k) + 1.0));
    result += weight * term;
    cumulative += weight;
    if (1.0 - cumulative < kTail && static_cast<double>(k) >= mean) break;
    term = step_t * term;
  }
  law.series_terms = k + 1;
  law.probabilities.assign(result.data(), result.data() + size);
  law.boundary_certificate = boundary_certificate(gen, t_phys);
  return law;
}

CurrentLaw exact_current_law(const GeneratorMatrix& gen, Site x,
                             double t_phys) {
  const TransientLaw law = transient_distribution(gen, t_phys);
  CurrentLaw out;
  out.pmf.assign(gen.space.n_particles() + 1, 0.0);
  for (std::size_t a = 0; a < gen.space.size(); ++a) {
    out.pmf[current_at({gen.space.state(a)}, x)] += law.probabilities[a];
  }
  out.boundary_certificate = law.boundary_certificate;
  return out;
}

}  // namespace asep::oracle
