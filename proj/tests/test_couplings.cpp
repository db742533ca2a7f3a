#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>

#include "fpl2/couplings.hpp"

using namespace fpl2;
using fpl2::testing::cdiff;

TEST_CASE("degenerate point n=2") {
  const auto c = couplings_from_n(2.0);
  CHECK(c.gamma == doctest::Approx(0.0));
  CHECK(cdiff(c.q, cd(-1.0, 0.0)) < 1e-14);
  CHECK(cdiff(c.a, cd(1.0, 0.0)) < 1e-14);
  CHECK(cdiff(std::pow(c.omega, 4), cd(1.0, 0.0)) < 1e-14);
}

TEST_CASE("n=0 couplings") {
  const auto c = couplings_from_n(0.0);
  CHECK(c.gamma == doctest::Approx(std::numbers::pi / 2));
  CHECK(cdiff(c.q, cd(0.0, 1.0)) < 1e-14);  // -e^{-i pi/2} = i
  CHECK(cdiff(c.a, cd(0.0, 1.0)) < 1e-14);
  CHECK(cdiff(c.omega, std::polar(1.0, std::numbers::pi / 8)) < 1e-14);
}

TEST_CASE("n=1 couplings") {
  const auto c = couplings_from_n(1.0);
  CHECK(c.gamma == doctest::Approx(std::numbers::pi / 3));
  CHECK(cdiff(c.q, -std::polar(1.0, -std::numbers::pi / 3)) < 1e-14);
  CHECK(cdiff(c.a, std::polar(1.0, std::numbers::pi / 3)) < 1e-14);
}

TEST_CASE("all defining relations hold across the critical window") {
  for (double n : {-1.7, -1.0, -0.3, 0.0, 0.5, 1.0, std::sqrt(2.0), 1.9, 2.0}) {
    const auto c = couplings_from_n(n);
    CHECK(std::abs(2.0 * std::cos(c.gamma) - n) < 1e-14);
    CHECK(cdiff(c.q, -std::exp(cd(0.0, -c.gamma))) < 1e-14);
    CHECK(cdiff(c.q, -1.0 / std::pow(c.omega, 4)) < 1e-14);
    CHECK(std::abs(-c.q - 1.0 / c.q - cd(n, 0.0)) < 1e-14);
    CHECK(std::abs(std::pow(c.omega, 4) + std::pow(c.omega, -4) - cd(n, 0.0)) < 1e-13);
    CHECK(std::abs(c.a + 1.0 / c.a - cd(n, 0.0)) < 1e-14);
    CHECK(cdiff(c.c_pref, 1.0 / c.q - c.q) < 1e-14);
    CHECK(std::abs(std::abs(c.q) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(c.omega) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(c.a) - 1.0) < 1e-14);
  }
}

TEST_CASE("all eight omega branches satisfy the fugacity relation") {
  for (int b = 0; b < 8; ++b) {
    const auto c = couplings_from_n(0.8, b);
    CHECK(std::abs(std::pow(c.omega, 4) + std::pow(c.omega, -4) - cd(0.8, 0.0)) < 1e-13);
    CHECK(cdiff(c.q, -std::pow(c.omega, -4)) < 1e-13);
  }
}

TEST_CASE("out of range and bad branch") {
  CHECK_THROWS_AS(couplings_from_n(2.0001), std::domain_error);
  CHECK_THROWS_AS(couplings_from_n(-3.0), std::domain_error);
  CHECK_THROWS_AS(couplings_from_n(1.0, 8), std::domain_error);
  CHECK_THROWS_AS(couplings_from_gamma(-0.1), std::domain_error);
}

TEST_CASE("A3 Cartan data") {
  const auto cd3 = cartan_a3(couplings_from_n(1.0).gamma);
  CHECK(cd3.rank == 3);
  CHECK(cd3.cartan[0][0] == 2);
  CHECK(cd3.cartan[0][2] == 0);
  CHECK(cd3.cartan[1][0] == -1);
  // det C = 4 by cofactor expansion
  const auto& m = cd3.cartan;
  const int det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  CHECK(det == 4);
  CHECK(cartan_a3_det() == doctest::Approx(4.0));
  CHECK(cd3.twist_vector[0] == doctest::Approx(0.0));
  CHECK(cd3.twist_vector[1] == doctest::Approx(-2.0 * couplings_from_n(1.0).gamma));
  CHECK(cd3.twist_vector[2] == doctest::Approx(0.0));
  // inverse against the matrix
  const auto inv = cartan_a3_inverse();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += m[i][k] * inv[k][j];
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0));
    }
}
