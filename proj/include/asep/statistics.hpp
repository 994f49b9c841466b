#ifndef ASEP_STATISTICS_HPP_
#define ASEP_STATISTICS_HPP_

#include <functional>
#include <span>
#include <vector>

namespace asep::stats {

/// Right-continuous empirical distribution function of a sample.
class EmpiricalCdf {
 public:
  /// Throws std::invalid_argument on an empty sample.
  explicit EmpiricalCdf(std::span<const double> samples);

  /// Fraction of samples <= s.
  double operator()(double s) const;
  /// Fraction of samples < s.
  double left_limit(double s) const;

  const std::vector<double>& sorted() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

/// sup over sample points of max(|F_n(s) - F(s)|, |F_n(s-) - F(s)|).
/// The reference CDF is called once per distinct sample value.
double ks_distance(const EmpiricalCdf& ecdf,
                   const std::function<double(double)>& cdf);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;  // m3 / m2^{3/2}
};

Moments moments(std::span<const double> samples);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
  std::size_t bins = 0;
};

/// Pearson goodness of fit of observed counts against expected
/// probabilities. Cells with expected count below min_expected are pooled
/// into one cell (merged into the smallest kept cell if still too small).
ChiSquareResult chi_square_test(std::span<const std::size_t> observed,
                                std::span<const double> probabilities,
                                double min_expected = 5.0);

}  // namespace asep::stats

#endif  // ASEP_STATISTICS_HPP_
