#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fpl2/couplings.hpp"

namespace fpl2 {

// Bethe roots u^{(i)}_k for the three nesting levels, with the logarithm
// branch integers that fix the log-form equations.
struct RootSet {
  double gamma = 0.0;
  int L = 1;
  std::array<std::vector<cd>, 3> roots;
  std::array<std::vector<int>, 3> branch_integers;

  std::array<int, 3> counts() const {
    return {static_cast<int>(roots[0].size()), static_cast<int>(roots[1].size()),
            static_cast<int>(roots[2].size())};
  }
  int total() const { return counts()[0] + counts()[1] + counts()[2]; }
};

// Q^{(i)}(u) = prod_k sin(gamma (u - u^{(i)}_k)); Q^{(0)} = Q^{(4)} = 1.
cd q_function(const RootSet& rs, int level, cd u);

// Algebraic residuals LHS - RHS of the Bethe equations, one per root.
// Throws std::domain_error on coincident roots or a vanishing denominator.
std::vector<cd> bae_residual(const RootSet& rs, const CouplingSet& cpl);

// Logarithmic form (with branch integers); the solver drives this to zero.
std::vector<cd> bae_log_residual(const RootSet& rs, const CouplingSet& cpl);

// Chooses branch integers making the log residual small at the given roots.
void calibrate_branches(RootSet& rs, const CouplingSet& cpl);

struct SolveOptions {
  int max_iterations = 200;
  double tolerance = 1e-13;
  double min_step = 1.0 / 1024.0;
  double collision_tolerance = 1e-9;
  double max_step_norm = 0.75;  // trust-region cap on the Newton step
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // max-norm of the log-form residual
};

// Damped Newton iteration on the log-form equations with frozen branch
// integers. Throws std::runtime_error on a singular Jacobian.
SolveReport solve(RootSet& rs, const CouplingSet& cpl, const SolveOptions& opt = {});

// Ground-state root set (m^{(i)} = L) at the model twist, built by a twist
// homotopy from the untwisted symmetric state and width continuation.
// Throws std::runtime_error if any stage fails to converge.
RootSet ground_state(int L, const CouplingSet& cpl);

// Random multi-start Newton search for all regular solutions with the given
// root counts; solutions are deduplicated modulo the lattice translations of
// the equations and runaway directions are filtered out.
std::vector<RootSet> solve_multistart(int L, const std::array<int, 3>& m, const CouplingSet& cpl,
                                      int tries, unsigned rng_seed = 0x5eed);

// Transfer-matrix eigenvalue from the root set (three-term form); the
// squared two-term form is exposed for the identity test.
cd eigenvalue_t(const RootSet& rs, const CouplingSet& cpl);
cd eigenvalue_t_squared_form(const RootSet& rs, const CouplingSet& cpl);

// Variable map u_k = 2i(u1+1/2), v_k = 2i(u3-1/2), w_k = 2i u2 and inverse.
struct NotationMap {
  std::vector<cd> u, v, w;
};
NotationMap notation_map(const RootSet& rs);
RootSet from_notation(const NotationMap& nm, double gamma, int L);

// n -> -n transform of the roots; returns a root set at gamma' = pi - gamma.
// Throws std::domain_error at gamma in {0, pi}.
RootSet n_flip(const RootSet& rs, const CouplingSet& cpl);

// Canonical ordering (by real part, then imaginary part) for comparisons.
void canonical_sort(RootSet& rs);

// JSON round trip (schema: gamma, L, counts, roots as re/im, branch
// integers, residual norm).
void write_root_set_json(std::ostream& os, const RootSet& rs, double residual_norm);
RootSet read_root_set_json(std::istream& is);

}  // namespace fpl2
