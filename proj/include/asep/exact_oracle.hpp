#ifndef ASEP_EXACT_ORACLE_HPP_
#define ASEP_EXACT_ORACLE_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <vector>

#include "asep/model.hpp"

namespace asep::oracle {

/// Largest state space the dense oracle will build.
inline constexpr std::size_t kMaxStates = 4096;

/// All placements of n_particles on the inclusive window, in lexicographic
/// order of the sorted position tuples.
class StateSpace {
 public:
  StateSpace(Window window, std::size_t n_particles);

  const Window& window() const { return window_; }
  std::size_t n_particles() const { return n_particles_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<Site>& state(std::size_t index) const {
    return states_[index];
  }
  /// Index of a state; throws std::out_of_range if it is not in the space.
  std::size_t index_of(const std::vector<Site>& positions) const;
  bool contains(const std::vector<Site>& positions) const {
    return index_.count(positions) != 0;
  }

 private:
  Window window_;
  std::size_t n_particles_;
  std::vector<std::vector<Site>> states_;
  std::map<std::vector<Site>, std::size_t> index_;
};

struct GeneratorMatrix {
  StateSpace space;
  ModelParameters params;
  // Generator: rates(a, b) is the jump rate a -> b, rates(a, a) minus the
  // exit rate of a.
  Eigen::MatrixXd rates;
  double uniformization_rate = 0.0;
  std::size_t initial_index = 0;
};

/// Rate matrix of ASEP on the window with out-of-window jumps suppressed,
/// started from the step state [1..n].
GeneratorMatrix build_generator(Window window, std::size_t n_particles,
                                const ModelParameters& params);

/// Upper bound on the total variation distance between the windowed and the
/// unbounded process at time t_phys: a state can only differ once some
/// particle has attempted enough jumps in one direction to reach the edge.
double boundary_certificate(const GeneratorMatrix& gen, double t_phys);

struct TransientLaw {
  std::vector<double> probabilities;  // indexed like gen.space
  double boundary_certificate = 0.0;
  std::size_t series_terms = 0;
};

/// exp(Q t) applied to the initial point mass, by uniformization. The
/// Poisson series is truncated once its tail drops below 1e-12.
TransientLaw transient_distribution(const GeneratorMatrix& gen, double t_phys);

struct CurrentLaw {
  std::vector<double> pmf;  // pmf[k] = P(current == k), k = 0..n
  double boundary_certificate = 0.0;
};

/// Law of the number of particles at or left of x at time t_phys.
CurrentLaw exact_current_law(const GeneratorMatrix& gen, Site x, double t_phys);

}  // namespace asep::oracle

#endif  // ASEP_EXACT_ORACLE_HPP_
