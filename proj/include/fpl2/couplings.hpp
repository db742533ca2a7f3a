#pragma once

#include <array>
#include <complex>

namespace fpl2 {

using cd = std::complex<double>;

// All model parameters derive from a single angle gamma in [0, pi]:
//   n = 2 cos(gamma),  q = -exp(-i gamma),  a = exp(i gamma),
//   omega^4 = exp(i gamma)  (so q = -omega^{-4} and n = omega^4 + omega^{-4}),
//   c_pref = q^{-1} - q.
// The branch index selects among the eight unit-circle solutions of
// omega^4 + omega^{-4} = n: branches 0..3 multiply the principal omega by
// i^k, branches 4..7 are the complex-conjugate family (gamma -> -gamma in
// all derived quantities). Spectra depend on the branch only through
// complex conjugation, which the branch-sweep tests rely on.
struct CouplingSet {
  double n = 2.0;
  double gamma = 0.0;
  cd q{-1.0, 0.0};
  cd omega{1.0, 0.0};
  cd a{1.0, 0.0};
  cd c_pref{0.0, 0.0};
  int omega_branch = 0;
};

// Throws std::domain_error for |n| > 2 (gapped regime, not modeled).
CouplingSet couplings_from_n(double n, int omega_branch = 0);

// Same parameter set addressed by gamma in [0, pi].
CouplingSet couplings_from_gamma(double gamma, int omega_branch = 0);

struct CartanData {
  int rank = 3;
  std::array<std::array<int, 3>, 3> cartan{};
  std::array<double, 3> twist_vector{};  // (0, -2*gamma, 0)
};

// A3 Cartan matrix plus the twist vector of the model at the given gamma.
CartanData cartan_a3(double gamma = 0.0);

// det C and C^{-1} for the A3 Cartan matrix, used by the CFT layer.
double cartan_a3_det();
std::array<std::array<double, 3>, 3> cartan_a3_inverse();

}  // namespace fpl2
