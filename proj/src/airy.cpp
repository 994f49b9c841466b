#include "asep/airy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace asep::tw {

namespace {

// Ai(0) = 3^{-2/3}/Gamma(2/3), -Ai'(0) = 3^{-1/3}/Gamma(1/3).
constexpr long double kAi0 = 0.355028053887817239260063186004183177L;
constexpr long double kAiPrime0 = 0.258819403792806798405183560189203963L;

// Beyond these points the asymptotic expansions are used. The oscillatory
// side needs a larger argument because its expansion error does not carry
// an exponentially small prefactor.
constexpr double kSeriesLimitPositive = 7.0;
constexpr double kSeriesLimitNegative = 8.0;
constexpr double kDomainLimit = 200.0;

AiryValues maclaurin(double xd) {
  // Ai = c1 f - c2 g with f, g the two power-series solutions of y'' = x y.
  const long double x = xd;
  const long double x3 = x * x * x;
  long double f = 1.0L, g = x, gp = 1.0L;
  long double tf = 1.0L, tfp = x * x / 2.0L, tg = x, tgp = 1.0L;
  long double fp = tfp;
  for (int k = 0; k < 200; ++k) {
    const long double k3 = 3.0L * k;
    tf *= x3 / ((k3 + 2.0L) * (k3 + 3.0L));
    tfp *= x3 / ((k3 + 3.0L) * (k3 + 5.0L));
    tg *= x3 / ((k3 + 3.0L) * (k3 + 4.0L));
    tgp *= x3 / ((k3 + 1.0L) * (k3 + 3.0L));
    f += tf;
    fp += tfp;
    g += tg;
    gp += tgp;
    const long double scale = 1e-22L * (std::fabs(f) + std::fabs(g) + 1.0L);
    if (k > 8 && std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) +
                         std::fabs(tgp) <
                     scale) {
      break;
    }
  }
  return {static_cast<double>(kAi0 * f - kAiPrime0 * g),
          static_cast<double>(kAi0 * fp - kAiPrime0 * gp)};
}

// Coefficients u_k, v_k of the large-argument expansions.
struct AsymptoticCoefficients {
  static constexpr int kTerms = 40;
  double u[kTerms];
  double v[kTerms];

  AsymptoticCoefficients() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < kTerms; ++k) {
      const double kk = k;
      u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) /
             ((2 * kk - 1) * 216.0 * kk);
      v[k] = -u[k] * (6 * kk + 1) / (6 * kk - 1);
    }
  }
};

const AsymptoticCoefficients& coefficients() {
  static const AsymptoticCoefficients table;
  return table;
}

// Sums sum_k sign_k c[start + step k] zeta^{-(start + step k)} until the terms
// stop decreasing.
double asymptotic_sum(const double* c, double zeta, int start, int step,
                      bool alternate) {
  double sum = 0.0;
  double previous = HUGE_VAL;
  double sign = 1.0;
  for (int k = start; k < AsymptoticCoefficients::kTerms; k += step) {
    const double term = c[k] * std::pow(zeta, -k);
    if (std::abs(term) >= previous) break;
    sum += sign * term;
    previous = std::abs(term);
    if (previous < 1e-18 * std::abs(sum)) break;
    if (alternate) sign = -sign;
  }
  return sum;
}

AiryValues asymptotic_positive(double x) {
  const auto& c = coefficients();
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double quarter = std::sqrt(std::sqrt(x));
  const double prefactor =
      std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
  const double su = asymptotic_sum(c.u, zeta, 0, 1, true);
  const double sv = asymptotic_sum(c.v, zeta, 0, 1, true);
  return {prefactor / quarter * su, -prefactor * quarter * sv};
}

AiryValues asymptotic_negative(double x) {
  const auto& c = coefficients();
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double quarter = std::sqrt(std::sqrt(z));
  const double phase = zeta - std::numbers::pi / 4.0;
  const double cs = std::cos(phase);
  const double sn = std::sin(phase);
  const double root_pi = std::sqrt(std::numbers::pi);

  // Even and odd parts, each alternating in sign.
  const double ue = asymptotic_sum(c.u, zeta, 0, 2, true);
  const double uo = asymptotic_sum(c.u, zeta, 1, 2, true);
  const double ve = asymptotic_sum(c.v, zeta, 0, 2, true);
  const double vo = asymptotic_sum(c.v, zeta, 1, 2, true);

  return {(cs * ue + sn * uo) / (root_pi * quarter),
          quarter * (sn * ve - cs * vo) / root_pi};
}

}  // namespace

AiryValues airy(double x) {
  if (!(std::abs(x) <= kDomainLimit)) {
    throw std::domain_error("airy: |x| must be <= 200 (got " +
                            std::to_string(x) + ")");
  }
  if (x > kSeriesLimitPositive) return asymptotic_positive(x);
  if (x < -kSeriesLimitNegative) return asymptotic_negative(x);
  return maclaurin(x);
}

AiryValues airy_or_zero(double x) {
  if (x > kDomainLimit) return {0.0, 0.0};
  return airy(x);
}

double airy_kernel(double x, const AiryValues& ax, double y,
                   const AiryValues& ay) {
  if (std::abs(x - y) < 1e-6) {
    // K is symmetric, so the diagonal value at the midpoint is second-order
    // accurate.
    const double m = 0.5 * (x + y);
    const AiryValues am = (x == y) ? ax : airy_or_zero(m);
    return am.ai_prime * am.ai_prime - m * am.ai * am.ai;
  }
  return (ax.ai * ay.ai_prime - ax.ai_prime * ay.ai) / (x - y);
}

double airy_kernel(double x, double y) {
  return airy_kernel(x, airy_or_zero(x), y, airy_or_zero(y));
}

}  // namespace asep::tw
