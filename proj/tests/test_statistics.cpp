#include <cmath>
#include <stdexcept>
#include <vector>

#include "asep/statistics.hpp"
#include "doctest.h"

using namespace asep::stats;

TEST_CASE("empirical cdf") {
  const std::vector<double> xs = {3.0, 1.0, 2.0, 2.0};
  const EmpiricalCdf ecdf(xs);
  CHECK(ecdf.sorted() == std::vector<double>{1.0, 2.0, 2.0, 3.0});
  CHECK(ecdf(0.5) == 0.0);
  CHECK(ecdf(2.0) == 0.75);
  CHECK(ecdf.left_limit(2.0) == 0.25);
  CHECK(ecdf(3.0) == 1.0);
  CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("ks distance uses both sides of each jump") {
  const auto uniform = [](double s) { return std::clamp(s, 0.0, 1.0); };
  CHECK(ks_distance(EmpiricalCdf(std::vector<double>{0.5}), uniform) == 0.5);
  const std::vector<double> grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  CHECK(ks_distance(EmpiricalCdf(grid), uniform) == doctest::Approx(0.1));
  const std::vector<double> tied = {0.2, 0.2, 0.2, 0.9};
  CHECK(ks_distance(EmpiricalCdf(tied), uniform) == doctest::Approx(0.55));
}

TEST_CASE("moments") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0, 10.0};
  const auto m = moments(xs);
  CHECK(m.mean == doctest::Approx(4.0));
  CHECK(m.variance == doctest::Approx(12.5));
  // m2 = 10, m3 = 36
  CHECK(m.skewness == doctest::Approx(36.0 / std::pow(10.0, 1.5)));
}

TEST_CASE("chi-square test") {
  const std::vector<double> probs = {0.25, 0.25, 0.5};
  const std::vector<std::size_t> perfect = {25, 25, 50};
  const auto fit = chi_square_test(perfect, probs);
  CHECK(fit.statistic == 0.0);
  CHECK(fit.p_value == doctest::Approx(1.0));
  CHECK(fit.degrees_of_freedom == 2);

  const std::vector<std::size_t> off = {30, 20, 50};
  const auto r = chi_square_test(off, probs);
  CHECK(r.statistic == doctest::Approx(2.0));
  CHECK(r.p_value == doctest::Approx(std::exp(-1.0)));  // chi2 with 2 dof

  // Small cells are pooled.
  const std::vector<double> sparse = {0.49, 0.49, 0.01, 0.01};
  const std::vector<std::size_t> counts = {49, 49, 1, 1};
  const auto pooled = chi_square_test(counts, sparse);
  CHECK(pooled.bins == 2);

  CHECK_THROWS(chi_square_test(std::vector<std::size_t>{1, 2}, probs));
}
