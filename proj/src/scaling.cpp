#include "asep/scaling.hpp"

#include <cmath>
#include <string>

namespace asep::scaling {

namespace {

void require_subunit(double v, const char* where) {
  if (!(std::abs(v) < 1.0)) {
    throw std::invalid_argument(std::string(where) +
                                ": scaled position must satisfy |v| < 1");
  }
}

void require_positive_time(double t, const char* where) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument(std::string(where) + ": t must be > 0");
  }
}

// Defining equation in r = sqrt(sigma):
//   h(r) = 2r - 1 + v + k r^{-1/3} (1-r)^{2/3},   k = s t^{-2/3}.
struct SigmaEquation {
  double v;
  double k;

  double operator()(double r) const {
    return 2.0 * r - 1.0 + v + k * std::cbrt((1.0 - r) * (1.0 - r) / r);
  }

  double derivative(double r) const {
    const double g = std::cbrt((1.0 - r) * (1.0 - r) / r);
    // d/dr log g = -1/(3r) - 2/(3(1-r))
    return 2.0 + k * g * (-1.0 / (3.0 * r) - 2.0 / (3.0 * (1.0 - r)));
  }
};

constexpr double kBracketEps = 1e-12;
constexpr double kResidualTol = 1e-13;

}  // namespace

CurrentConstants scaling_constants(double v) {
  require_subunit(v, "scaling_constants");
  double a1 = 0.25 * (1.0 - v) * (1.0 - v);
  if (v < 0.0) a1 -= std::abs(v);
  const double a2 = std::pow(2.0, -4.0 / 3.0) * std::pow(1.0 - v * v, 2.0 / 3.0);
  return {a1, a2};
}

double strong_law_density(double c, double gamma) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("strong_law_density: gamma must be > 0");
  }
  if (!(c >= 0.0 && c <= gamma)) {
    throw std::invalid_argument("strong_law_density: c must lie in [0, gamma]");
  }
  return (gamma - c) * (gamma - c) / (4.0 * gamma);
}

PositionConstants kpz_constants(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw std::invalid_argument("kpz_constants: sigma must lie in (0, 1)");
  }
  const double r = std::sqrt(sigma);
  return {-1.0 + 2.0 * r,
          std::pow(sigma, -1.0 / 6.0) * std::pow(1.0 - r, 2.0 / 3.0)};
}

double sigma_series(double v, double s, double t) {
  require_subunit(v, "sigma_series");
  require_positive_time(t, "sigma_series");
  const double half = 0.5 * (1.0 - v);
  return half * half - s * std::pow(2.0, -4.0 / 3.0) *
                           std::pow(1.0 - v * v, 2.0 / 3.0) *
                           std::pow(t, -2.0 / 3.0);
}

double invert_sigma(double v, double s, double t) {
  require_subunit(v, "invert_sigma");
  require_positive_time(t, "invert_sigma");
  const double r0 = 0.5 * (1.0 - v);
  if (s == 0.0) return r0 * r0;

  const SigmaEquation h{v, s * std::pow(t, -2.0 / 3.0)};
  const double r_min = std::sqrt(kBracketEps);
  const double r_max = std::sqrt(1.0 - kBracketEps);

  // h(r0) has the sign of s. For s < 0, h is increasing and the root lies
  // above r0. For s > 0 the roots lie below r0; the physical one is the
  // largest, found by scanning down from r0.
  double lo = 0.0;
  double hi = 0.0;
  if (s < 0.0) {
    lo = r0;
    hi = r_max;
    if (!(h(hi) > 0.0)) {
      throw OutOfAsymptoticRange("invert_sigma: no root in (0,1) for s=" +
                                 std::to_string(s) + ", t=" + std::to_string(t));
    }
  } else {
    constexpr int kScan = 400;
    hi = r0;
    bool bracketed = false;
    for (int i = 1; i <= kScan; ++i) {
      const double r = r0 - (r0 - r_min) * static_cast<double>(i) / kScan;
      if (h(r) <= 0.0) {
        lo = r;
        bracketed = true;
        break;
      }
      hi = r;
    }
    if (!bracketed) {
      throw OutOfAsymptoticRange("invert_sigma: no root in (0,1) for s=" +
                                 std::to_string(s) + ", t=" + std::to_string(t));
    }
  }

  // Safeguarded Newton, seeded with the series value.
  const double guess = sigma_series(v, s, t);
  double r = (guess > lo * lo && guess < hi * hi) ? std::sqrt(guess)
                                                  : 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double value = h(r);
    if (std::abs(value) <= kResidualTol) break;
    if (value < 0.0) {
      lo = r;
    } else {
      hi = r;
    }
    const double slope = h.derivative(r);
    double next = r - value / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == r) break;
    r = next;
  }
  return r * r;
}

std::int64_t m_of(double v, double s, double t) {
  require_positive_time(t, "m_of");
  const auto [a1, a2] = scaling_constants(v);
  const double m = std::round(a1 * t - a2 * s * std::cbrt(t));
  if (!(m >= 1.0)) {
    throw std::domain_error("m_of: threshold " + std::to_string(m) +
                            " below 1 for v=" + std::to_string(v) +
                            ", s=" + std::to_string(s) +
                            ", t=" + std::to_string(t));
  }
  return static_cast<std::int64_t>(m);
}

ScalingParameters make_scaling_parameters(double v, double s, double t) {
  ScalingParameters out;
  out.v = v;
  out.s = s;
  out.t = t;
  const auto current = scaling_constants(v);
  out.a1 = current.a1;
  out.a2 = current.a2;
  out.sigma = invert_sigma(v, s, t);
  const auto position = kpz_constants(out.sigma);
  out.c1 = position.c1;
  out.c2 = position.c2;
  out.m = m_of(v, s, t);
  return out;
}

}  // namespace asep::scaling
