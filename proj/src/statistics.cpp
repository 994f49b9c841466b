#include "asep/statistics.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace asep::stats {

EmpiricalCdf::EmpiricalCdf(std::span<const double> samples)
    : sorted_(samples.begin(), samples.end()) {
  if (sorted_.empty()) {
    throw std::invalid_argument("EmpiricalCdf: empty sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double s) const {
  const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), s) -
                     sorted_.begin();
  return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left_limit(double s) const {
  const auto count = std::lower_bound(sorted_.begin(), sorted_.end(), s) -
                     sorted_.begin();
  return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double ks_distance(const EmpiricalCdf& ecdf,
                   const std::function<double(double)>& cdf) {
  const auto& xs = ecdf.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double reference = cdf(xs[i]);
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j) / n;
    d = std::max({d, std::abs(at - reference), std::abs(below - reference)});
    i = j;
  }
  return d;
}

Moments moments(std::span<const double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("moments: empty sample");
  }
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : samples) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  Moments out;
  out.mean = mean;
  out.variance = samples.size() > 1 ? m2 / (n - 1.0) : 0.0;
  m2 /= n;
  m3 /= n;
  out.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  return out;
}

ChiSquareResult chi_square_test(std::span<const std::size_t> observed,
                                std::span<const double> probabilities,
                                double min_expected) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_test: size mismatch");
  }
  const double total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::size_t{0}));
  if (total == 0.0) {
    throw std::invalid_argument("chi_square_test: no observations");
  }

  std::vector<double> obs_cells, exp_cells;
  double pooled_obs = 0.0, pooled_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = total * probabilities[i];
    if (expected >= min_expected) {
      obs_cells.push_back(static_cast<double>(observed[i]));
      exp_cells.push_back(expected);
    } else {
      pooled_obs += static_cast<double>(observed[i]);
      pooled_exp += expected;
    }
  }
  if (pooled_obs > 0.0 || pooled_exp > 0.0) {
    if (pooled_exp >= min_expected || exp_cells.empty()) {
      obs_cells.push_back(pooled_obs);
      exp_cells.push_back(pooled_exp);
    } else {
      const auto smallest = static_cast<std::size_t>(
          std::min_element(exp_cells.begin(), exp_cells.end()) -
          exp_cells.begin());
      obs_cells[smallest] += pooled_obs;
      exp_cells[smallest] += pooled_exp;
    }
  }

  ChiSquareResult result;
  result.bins = obs_cells.size();
  for (std::size_t i = 0; i < obs_cells.size(); ++i) {
    const double diff = obs_cells[i] - exp_cells[i];
    if (exp_cells[i] > 0.0) {
      result.statistic += diff * diff / exp_cells[i];
    } else if (obs_cells[i] > 0.0) {
      result.statistic = std::numeric_limits<double>::infinity();
    }
  }
  result.degrees_of_freedom = result.bins > 1 ? result.bins - 1 : 0;
  if (result.degrees_of_freedom == 0) {
    result.p_value = result.statistic == 0.0 ? 1.0 : 0.0;
  } else if (!std::isfinite(result.statistic)) {
    result.p_value = 0.0;
  } else {
    const boost::math::chi_squared dist(
        static_cast<double>(result.degrees_of_freedom));
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
  }
  return result;
}

}  // namespace asep::stats
