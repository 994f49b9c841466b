#ifndef ASEP_TRACY_WIDOM_HPP_
#define ASEP_TRACY_WIDOM_HPP_

#include <span>
#include <vector>

namespace asep::tw {

/// Gauss-Legendre rule on the reference interval [-1, 1].
struct QuadratureRule {
  std::size_t order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(std::size_t order);

struct F2Result {
  double value = 0.0;
  /// Difference to a coarser rule (3/4 of the nodes); an a-posteriori
  /// error estimate for the coarser rule and a bound for this one.
  double error_estimate = 0.0;
  /// Set when error_estimate exceeds 1e-10.
  bool low_precision = false;
};

/// GUE largest-eigenvalue distribution F2(s) = det(I - K_Airy) on L2(s, inf),
/// by Nystrom discretization with the map xi -> s + 10 (1+xi)/(1-xi).
F2Result f2_cdf(double s, std::size_t order = 60);

/// F2(s) = exp(-int_s^inf (x - s) u(x)^2 dx) with u the Hastings-McLeod
/// solution of u'' = x u + 2 u^3, integrated downward from x = 10.
/// Domain s in [-10, 10].
double f2_cdf_painleve(double s);

/// Limit law of the normalized current: 1 - F2(-s).
double limit_law_current(double s, std::size_t order = 60);

struct DistributionTable {
  std::vector<double> s_values;
  std::vector<double> f2;
  std::vector<double> limit_law;
};

DistributionTable make_distribution_table(std::span<const double> s_values,
                                          std::size_t order = 60);

}  // namespace asep::tw

#endif  // ASEP_TRACY_WIDOM_HPP_
