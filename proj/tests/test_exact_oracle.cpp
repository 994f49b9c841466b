#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "asep/exact_oracle.hpp"
#include "doctest.h"

using namespace asep;
using namespace asep::oracle;

TEST_CASE("state space enumeration") {
  const StateSpace space(Window{-3, 5}, 3);
  CHECK(space.size() == 84);  // C(9, 3)
  CHECK(space.state(0) == std::vector<Site>{-3, -2, -1});
  CHECK(space.state(83) == std::vector<Site>{3, 4, 5});
  for (std::size_t i = 0; i < space.size(); ++i) {
    REQUIRE(space.index_of(space.state(i)) == i);
    if (i > 0) REQUIRE(space.state(i - 1) < space.state(i));
  }
  CHECK_FALSE(space.contains({0, 0, 1}));
  CHECK_THROWS_AS(space.index_of({-4, 0, 1}), std::out_of_range);
  CHECK_THROWS_AS(StateSpace(Window{0, 40}, 6), std::length_error);
}

TEST_CASE("generator rates") {
  const ModelParameters params(0.25, 0.75);
  const auto gen = build_generator(Window{-3, 5}, 3, params);
  CHECK(gen.space.state(gen.initial_index) == std::vector<Site>{1, 2, 3});
  CHECK(gen.uniformization_rate == 3.0);
  // From [1,2,3]: particle 1 left (q), particle 3 right (p).
  const auto row = gen.rates.row(static_cast<Eigen::Index>(gen.initial_index));
  CHECK(std::abs(row.sum()) <= 1e-15);
  CHECK(row(static_cast<Eigen::Index>(gen.initial_index)) == -1.0);
  CHECK(row(static_cast<Eigen::Index>(gen.space.index_of({0, 2, 3}))) == 0.75);
  CHECK(row(static_cast<Eigen::Index>(gen.space.index_of({1, 2, 4}))) == 0.25);
  for (Eigen::Index a = 0; a < gen.rates.rows(); ++a) {
    REQUIRE(std::abs(gen.rates.row(a).sum()) <= 1e-14);
    REQUIRE(-gen.rates(a, a) <= gen.uniformization_rate);
  }
  CHECK_THROWS(build_generator(Window{2, 8}, 3, params));
}

TEST_CASE("uniformization matches the matrix exponential") {
  const ModelParameters params(0.3, 0.7);
  const auto gen = build_generator(Window{-2, 4}, 2, params);
  const double t = 0.8;
  const auto law = transient_distribution(gen, t);
  const Eigen::MatrixXd p = (gen.rates * t).exp();
  const auto i0 = static_cast<Eigen::Index>(gen.initial_index);
  for (std::size_t b = 0; b < law.probabilities.size(); ++b) {
    REQUIRE(std::abs(law.probabilities[b] - p(i0, static_cast<Eigen::Index>(b))) <= 1e-12);
  }
  const double total = std::accumulate(law.probabilities.begin(), law.probabilities.end(), 0.0);
  CHECK(std::abs(total - 1.0) <= 1e-11);
  CHECK(law.series_terms > 0);
}

TEST_CASE("one particle follows the Skellam law") {
  const ModelParameters params(0.25, 0.75);
  const double t = 0.5;
  const auto gen = build_generator(Window{-20, 22}, 1, params);
  const auto law = transient_distribution(gen, t);
  const double ratio = std::sqrt(params.p() / params.q());
  const double z = 2.0 * t * std::sqrt(params.p() * params.q());
  for (int k = -8; k <= 8; ++k) {
    const double expected = std::exp(-t) * std::pow(ratio, k) * std::cyl_bessel_i(std::abs(k), z);
    REQUIRE(std::abs(law.probabilities[gen.space.index_of({1 + k})] - expected) <= 1e-13);
  }
  CHECK(law.boundary_certificate < 1e-15);
}

TEST_CASE("time zero is the step state") {
  const auto gen = build_generator(Window{-1, 4}, 2, ModelParameters(0.5, 0.5));
  const auto law = transient_distribution(gen, 0.0);
  CHECK(law.probabilities[gen.initial_index] == 1.0);
  CHECK(law.boundary_certificate == 0.0);
}

TEST_CASE("boundary certificate") {
  const ModelParameters params(0.25, 0.75);
  const auto narrow = build_generator(Window{-3, 5}, 3, params);
  const double c = boundary_certificate(narrow, 0.5);
  CHECK(c > 1e-4);
  CHECK(c < 1e-2);
  const auto wide = build_generator(Window{-8, 10}, 3, params);
  CHECK(boundary_certificate(wide, 0.5) < 1e-8);
  CHECK(boundary_certificate(narrow, 1e3) == 1.0);
}

TEST_CASE("current law") {
  const ModelParameters params(0.25, 0.75);
  const auto gen = build_generator(Window{-3, 5}, 3, params);
  const auto law = transient_distribution(gen, 0.5);
  const auto current = exact_current_law(gen, 0, 0.5);
  REQUIRE(current.pmf.size() == 4);
  double direct = 0.0;
  for (std::size_t i = 0; i < gen.space.size(); ++i) {
    if (gen.space.state(i)[0] <= 0) direct += law.probabilities[i];
  }
  CHECK(std::abs((1.0 - current.pmf[0]) - direct) <= 1e-11);
  CHECK(std::abs(std::accumulate(current.pmf.begin(), current.pmf.end(), 0.0) - 1.0) <= 1e-11);
  CHECK(current.boundary_certificate == law.boundary_certificate);
}
