#pragma once

#include <optional>
#include <vector>

#include "fpl2/couplings.hpp"
#include "fpl2/rmatrix.hpp"
#include "fpl2/tensor_op.hpp"

namespace fpl2 {

enum class TransferVariant { TwoRowLoop, TwoRowQuantum, OneRowFund, OneRowConj };

struct ChargeVector {
  int q1 = 0, q2 = 0, q3 = 0;
  friend bool operator==(const ChargeVector&, const ChargeVector&) = default;
  friend auto operator<=>(const ChargeVector&, const ChargeVector&) = default;
};

// Twisted transfer matrix on a width-2L cylinder. The physical space is the
// tensor product of L pairs of vertical lines, each pair ordered
// (conjugate, fundamental); site 1 is the most significant index block.
struct TransferOperator {
  int L = 1;
  TransferVariant variant = TransferVariant::TwoRowLoop;
  CouplingSet cpl;
  std::optional<cd> x, y;  // spectral arguments (nullopt = operating point)
  TensorOperator matrix;
};

// Twist of the auxiliary line in the given representation:
// diag(1/a,1/a,a,a) for the fundamental, its inverse for the conjugate.
Eigen::Vector4cd twist_matrix(const CouplingSet& cpl, Rep rep);

// Throws std::length_error above the width cap (default 5).
TransferOperator build_transfer(int L, TransferVariant variant, const CouplingSet& cpl,
                                std::optional<cd> x = std::nullopt,
                                std::optional<cd> y = std::nullopt, int width_cap = 5);

// Diagonal conserved charge number i in {1,2,3}; the reference state
// (fundamental lines in state 1, conjugate lines in state 4) has eigenvalue L.
TensorOperator charge_operator(int i, int L);

// Charge sector of a basis state (0-based composite index).
ChargeVector state_charge(std::int64_t state0, int L);

// 0-based basis indices spanning a charge sector.
std::vector<std::int64_t> sector_indices(int L, const ChargeVector& sector);

// 0-based composite index of the reference state (all vertical arrows
// white-up: conjugate digit 4, fundamental digit 1 on every pair).
std::int64_t reference_state_index(int L);

// The k largest-modulus eigenvalues of the sector block, sorted by modulus
// (descending), ties broken by phase in (-pi, pi]. Dense below dimension
// 4096, implicitly restarted Arnoldi above. Throws std::invalid_argument on
// an empty sector, std::runtime_error on non-convergence.
std::vector<cd> sector_spectrum(const TransferOperator& T, const ChargeVector& sector, int k);

// All distinct nonempty sectors at width L, sorted.
std::vector<ChargeVector> all_sectors(int L);

// Full spectrum of a (dense-sized) transfer matrix, sorted as above.
std::vector<cd> full_spectrum(const TransferOperator& T);

// Sorts eigenvalues by modulus descending, then phase.
void sort_spectrum(std::vector<cd>& eigs);

}  // namespace fpl2
