#ifndef ASEP_MODEL_HPP_
#define ASEP_MODEL_HPP_

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace asep {

using Site = std::int64_t;

/// Jump probabilities of a single particle. A particle jumps right with
/// probability p and left with probability q once its rate-one clock rings.
class ModelParameters {
 public:
  /// Throws std::invalid_argument unless p, q >= 0 and |p + q - 1| <= 1e-12.
  ModelParameters(double p, double q);

  /// Totally asymmetric leftward process (p = 0, q = 1).
  static ModelParameters tasep() { return {0.0, 1.0}; }

  double p() const { return p_; }
  double q() const { return q_; }
  /// Drift q - p; positive means net flow to the left.
  double gamma() const { return q_ - p_; }

  bool operator==(const ModelParameters&) const = default;

 private:
  double p_;
  double q_;
};

/// Particle positions in increasing order; positions[i] is the (i+1)-th
/// left-most particle.
struct ParticleConfiguration {
  std::vector<Site> positions;
  double clock = 0.0;
  std::uint64_t event_count = 0;

  std::size_t size() const { return positions.size(); }
  bool operator==(const ParticleConfiguration&) const = default;
};

/// Inclusive lattice interval outside of which jumps are suppressed. The
/// default window is the whole lattice.
struct Window {
  Site lo = std::numeric_limits<Site>::min();
  Site hi = std::numeric_limits<Site>::max();

  bool contains(Site x) const { return lo <= x && x <= hi; }
  bool operator==(const Window&) const = default;
};

using Engine = std::mt19937_64;

/// Deterministic substream for one trajectory of an ensemble, derived from
/// the master seed and the trajectory index only.
Engine make_stream(std::uint64_t master_seed, std::uint64_t trajectory_index);

struct TrajectoryState {
  ParticleConfiguration configuration;
  Engine rng;
  Window window;
};

/// Step initial condition: particles at 1, 2, ..., n.
ParticleConfiguration init_step(std::size_t n);

/// Number of step particles needed so that, up to a 1e-10 tail budget, no
/// omitted particle can reach site x <= 0 by physical time t_phys.
/// N = ceil(t_phys + 8 sqrt(t_phys + 1)) + |x| + 1.
std::size_t truncation_size(double t_phys, Site x);

/// Fresh trajectory started from init_step(n) on the given substream.
TrajectoryState make_trajectory(std::size_t n, std::uint64_t master_seed,
                                std::uint64_t trajectory_index,
                                Window window = {});

/// One attempted move: dt ~ Exp(N), uniform particle, right with probability
/// p, left otherwise; suppressed if the target is occupied or outside the
/// window. Returns dt.
double advance_event(TrajectoryState& state, const ModelParameters& params);

/// Runs events until the physical clock reaches t_phys. The event that
/// would overshoot is discarded and the clock set to t_phys.
void run_to(TrajectoryState& state, double t_phys,
            const ModelParameters& params);

/// Number of particles at or to the left of x.
std::size_t current_at(const ParticleConfiguration& config, Site x);

/// Position of the m-th left-most particle, 1 <= m <= N.
Site position_of(const ParticleConfiguration& config, std::size_t m);

/// True when positions are strictly increasing.
bool is_ordered(const ParticleConfiguration& config);

}  // namespace asep

#endif  // ASEP_MODEL_HPP_
