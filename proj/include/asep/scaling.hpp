#ifndef ASEP_SCALING_HPP_
#define ASEP_SCALING_HPP_

#include <cstdint>
#include <stdexcept>

namespace asep::scaling {

/// Raised by invert_sigma when the fluctuation coordinate is too large for
/// the given time to admit a root in (0, 1).
class OutOfAsymptoticRange : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct CurrentConstants {
  double a1;  // mean current per unit time
  double a2;  // scale of t^{1/3} fluctuations
};

struct PositionConstants {
  double c1;  // mean position per unit time
  double c2;  // scale of t^{1/3} position fluctuations
};

/// Scaled position v, fluctuation coordinate s, time t and everything
/// derived from them.
struct ScalingParameters {
  double v = 0.0;
  double s = 0.0;
  double t = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double sigma = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::int64_t m = 0;
};

/// a1 = (1-v)^2/4 (less |v| when v < 0), a2 = 2^{-4/3} (1-v^2)^{2/3}.
CurrentConstants scaling_constants(double v);

/// Almost-sure limit of I([-ct], t)/t: (gamma - c)^2 / (4 gamma).
double strong_law_density(double c, double gamma);

/// c1 = -1 + 2 sqrt(sigma), c2 = sigma^{-1/6} (1 - sqrt(sigma))^{2/3}.
PositionConstants kpz_constants(double sigma);

/// Two-term expansion of the sigma solving -v t = c1 t + s c2 t^{1/3}.
double sigma_series(double v, double s, double t);

/// Root in (0,1) of -v = c1(sigma) + s c2(sigma) t^{-2/3}. The physical root
/// is the one continuously connected to ((1-v)/2)^2 as s t^{-2/3} -> 0.
double invert_sigma(double v, double s, double t);

/// Current threshold round(a1 t - a2 s t^{1/3}). For v >= 0 this is also the
/// rank of the particle whose position carries the same limit law.
std::int64_t m_of(double v, double s, double t);

/// Collects all of the above for one (v, s, t).
ScalingParameters make_scaling_parameters(double v, double s, double t);

}  // namespace asep::scaling

#endif  // ASEP_SCALING_HPP_
