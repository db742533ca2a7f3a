#pragma once

#include <array>
#include <vector>

#include "fpl2/couplings.hpp"

namespace fpl2 {

// Central charge of the twisted model: the general quadratic form
// r - 3/(pi(pi-gamma)) <w|C^{-1}|w> and its specialization
// 3 - 12 gamma^2 / (pi (pi - gamma)); both are evaluated and must agree.
double central_charge_closed(double gamma);

// Coulomb-gas charge: e on the weight lattice (coordinates in the
// fundamental-weight basis), m on the root lattice (simple-root basis),
// e0 = w / (2 pi) the background.
struct CoulombCharge {
  std::array<double, 3> e{};
  std::array<double, 3> m{};
};

// Delta = 1/4 <e|K^{-1}|e - 2 e0> + 1/4 <m|K|m> with K = (1 - gamma/pi)/2 C.
// Integrality of e and m in their bases is checked (background excluded).
double conformal_weight(const CoulombCharge& ch, double gamma);

struct ScalingSeries {
  std::vector<int> widths;        // strictly increasing L values
  std::vector<double> log_t;      // log of the eigenvalue modulus per width
};

struct FitResult {
  double f0 = 0.0;            // linear coefficient, log t = -L f0 + pi c /(6L) + ...
  double c_effective = 0.0;   // 6 b / pi from the 1/L coefficient b (c or c - 24 Delta)
  double residual_norm = 0.0;
};

// Least-squares fit of log t(L) against {L, 1/L} (optionally + 1/L^3).
// Throws std::invalid_argument for fewer than 3 points.
FitResult fit_scaling(const ScalingSeries& series, bool cubic_correction = false);

}  // namespace fpl2
