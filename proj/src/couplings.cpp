#include "fpl2/couplings.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpl2 {

namespace {

CouplingSet build(double gamma, int omega_branch) {
  if (omega_branch < 0 || omega_branch > 7) {
    throw std::domain_error("omega_branch must be in 0..7");
  }
  const double sign = omega_branch < 4 ? 1.0 : -1.0;
  const int quarter = omega_branch % 4;
  const double half_pi = std::numbers::pi / 2.0;

  CouplingSet cs;
  cs.gamma = gamma;
  cs.n = 2.0 * std::cos(gamma);
  cs.omega_branch = omega_branch;
  cs.omega = std::polar(1.0, sign * gamma / 4.0 + quarter * half_pi);
  // q = -omega^{-4}; computed from gamma directly so the relation is exact.
  cs.q = -std::polar(1.0, -sign * gamma);
  cs.a = std::polar(1.0, sign * gamma);
  cs.c_pref = 1.0 / cs.q - cs.q;
  return cs;
}

}  // namespace

CouplingSet couplings_from_n(double n, int omega_branch) {
  if (std::abs(n) > 2.0) {
    throw std::domain_error("loop fugacity |n| > 2: gapped regime, couplings undefined");
  }
  return build(std::acos(n / 2.0), omega_branch);
}

CouplingSet couplings_from_gamma(double gamma, int omega_branch) {
  if (gamma < 0.0 || gamma > std::numbers::pi) {
    throw std::domain_error("gamma outside [0, pi]");
  }
  return build(gamma, omega_branch);
}

CartanData cartan_a3(double gamma) {
  CartanData cd;
  cd.rank = 3;
  cd.cartan = {{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}};
  cd.twist_vector = {0.0, -2.0 * gamma, 0.0};
  return cd;
}

double cartan_a3_det() { return 4.0; }

std::array<std::array<double, 3>, 3> cartan_a3_inverse() {
  return {{{0.75, 0.5, 0.25}, {0.5, 1.0, 0.5}, {0.25, 0.5, 0.75}}};
}

}  // namespace fpl2
