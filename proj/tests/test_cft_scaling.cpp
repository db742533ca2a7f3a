#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fpl2/cft_scaling.hpp"

using namespace fpl2;

TEST_CASE("central charge closed form") {
  const double pi = std::numbers::pi;
  CHECK(central_charge_closed(0.0) == doctest::Approx(3.0));
  CHECK(central_charge_closed(pi / 3) == doctest::Approx(1.0));
  CHECK(central_charge_closed(pi / 4) == doctest::Approx(2.0));
  // the general quadratic form and the specialization agree on a grid
  // (checked internally; a disagreement throws)
  for (double g = 0.0; g < pi - 1e-6; g += pi / 37) CHECK_NOTHROW(central_charge_closed(g));
}

TEST_CASE("conformal weights") {
  const double pi = std::numbers::pi;
  for (double g : {pi / 4, pi / 3, pi / 2}) {
    CHECK(conformal_weight({{0, 0, 0}, {0, 0, 0}}, g) == doctest::Approx(0.0));
    const double want = (1.0 - g / pi) / 4.0;
    CHECK(conformal_weight({{0, 0, 0}, {1, 0, 0}}, g) == doctest::Approx(want).epsilon(1e-14));
    CHECK(conformal_weight({{0, 0, 0}, {0, 0, 1}}, g) == doctest::Approx(want).epsilon(1e-14));
  }
  CHECK_THROWS_AS(conformal_weight({{0.5, 0, 0}, {0, 0, 0}}, 1.0), std::domain_error);
}

TEST_CASE("synthetic two-term series is recovered exactly") {
  const double pi = std::numbers::pi;
  ScalingSeries s;
  const double f0 = 1.7, c = 1.0;
  for (int L = 4; L <= 16; L += 2) {
    s.widths.push_back(L);
    s.log_t.push_back(-L * f0 + pi * c / (6.0 * L));
  }
  const auto fit = fit_scaling(s);
  CHECK(std::abs(fit.c_effective - c) < 1e-10);
  CHECK(std::abs(fit.f0 - f0) < 1e-12);
}

TEST_CASE("adding the cubic correction never hurts the residual") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  ScalingSeries s;
  for (int L = 4; L <= 16; L += 2) {
    s.widths.push_back(L);
    s.log_t.push_back(-1.3 * L + 0.5 / L + u(rng));
  }
  const auto f2 = fit_scaling(s, false);
  const auto f3 = fit_scaling(s, true);
  CHECK(f3.residual_norm <= f2.residual_norm + 1e-15);
}

TEST_CASE("fit input validation") {
  ScalingSeries s;
  s.widths = {4, 6};
  s.log_t = {1.0, 2.0};
  CHECK_THROWS_AS(fit_scaling(s), std::invalid_argument);
  s.widths = {4, 6, 6};
  s.log_t = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(fit_scaling(s), std::invalid_argument);
}
