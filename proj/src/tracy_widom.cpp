#include "asep/tracy_widom.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "asep/airy.hpp"

namespace asep::tw {

QuadratureRule gauss_legendre(std::size_t order) {
  if (order == 0) {
    throw std::invalid_argument("gauss_legendre: order must be >= 1");
  }
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double n = static_cast<double>(order);
  // Roots are symmetric; compute the upper half by Newton from the
  // Chebyshev-like initial guess.
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

namespace {

constexpr double kHalfLineScale = 10.0;

double fredholm_determinant(double s, const QuadratureRule& rule) {
  const std::size_t n = rule.order;
  std::vector<double> x(n), sqrt_w(n);
  std::vector<AiryValues> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = rule.nodes[i];
    x[i] = s + kHalfLineScale * (1.0 + xi) / (1.0 - xi);
    const double jacobian = 2.0 * kHalfLineScale / ((1.0 - xi) * (1.0 - xi));
    sqrt_w[i] = std::sqrt(rule.weights[i] * jacobian);
    values[i] = airy_or_zero(x[i]);
  }
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double k = sqrt_w[i] * airy_kernel(x[i], values[i], x[j], values[j]) *
                       sqrt_w[j];
      const double entry = (i == j ? 1.0 : 0.0) - k;
      a(i, j) = entry;
      a(j, i) = entry;
    }
  }
  return a.partialPivLu().determinant();
}

}  // namespace

F2Result f2_cdf(double s, std::size_t order) {
  if (order < 10) {
    throw std::invalid_argument("f2_cdf: quadrature order must be >= 10");
  }
  if (!std::isfinite(s) || s < -200.0) {
    throw std::domain_error("f2_cdf: s outside supported range (got " +
                            std::to_string(s) + ")");
  }
  const double fine = fredholm_determinant(s, gauss_legendre(order));
  const double coarse =
      fredholm_determinant(s, gauss_legendre(order - order / 4));
  F2Result result;
  result.value = std::clamp(fine, 0.0, 1.0);
  result.error_estimate = std::abs(fine - coarse);
  result.low_precision = result.error_estimate > 1e-10;
  return result;
}

namespace {

// State: u, u', J1 = int_x^inf u^2, J2 = int_x^inf y u^2.
using PainleveState = std::array<double, 4>;

constexpr double kPainleveStart = 10.0;
constexpr double kPainleveLowest = -10.0;
constexpr double kBlowUp = 1e6;

}  // namespace

double f2_cdf_painleve(double s) {
  if (!(s >= kPainleveLowest && s <= kPainleveStart)) {
    throw std::domain_error("f2_cdf_painleve: s must lie in [-10, 10] (got " +
                            std::to_string(s) + ")");
  }
  namespace odeint = boost::numeric::odeint;

  // u ~ Ai at x = 10 up to O(Ai^3) ~ 1e-30. The tail integrals of Ai^2 have
  // closed forms.
  const double x0 = kPainleveStart;
  const AiryValues a = airy(x0);
  PainleveState state{
      a.ai, a.ai_prime, a.ai_prime * a.ai_prime - x0 * a.ai * a.ai,
      -(x0 * x0 * a.ai * a.ai - x0 * a.ai_prime * a.ai_prime +
        a.ai * a.ai_prime) /
          3.0};

  if (s < x0) {
    auto rhs = [](const PainleveState& y, PainleveState& dy, double x) {
      const double u2 = y[0] * y[0];
      dy[0] = y[1];
      dy[1] = x * y[0] + 2.0 * u2 * y[0];
      dy[2] = -u2;
      dy[3] = -x * u2;
    };
    auto stepper = odeint::make_controlled(
        1e-30, 1e-13, odeint::runge_kutta_fehlberg78<PainleveState>());
    odeint::integrate_adaptive(stepper, rhs, state, x0, s, -1e-3);
    if (!(std::abs(state[0]) < kBlowUp) || !std::isfinite(state[3])) {
      throw std::domain_error("f2_cdf_painleve: integration blew up at s=" +
                              std::to_string(s));
    }
  }
  const double exponent = state[3] - s * state[2];
  return std::exp(-exponent);
}

double limit_law_current(double s, std::size_t order) {
  return 1.0 - f2_cdf(-s, order).value;
}

DistributionTable make_distribution_table(std::span<const double> s_values,
                                          std::size_t order) {
  DistributionTable table;
  table.s_values.assign(s_values.begin(), s_values.end());
  table.f2.reserve(s_values.size());
  table.limit_law.reserve(s_values.size());
  for (double s : s_values) {
    table.f2.push_back(f2_cdf(s, order).value);
    table.limit_law.push_back(limit_law_current(s, order));
  }
  return table;
}

}  // namespace asep::tw
