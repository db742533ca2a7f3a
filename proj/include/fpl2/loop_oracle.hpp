#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fpl2/couplings.hpp"

namespace fpl2 {

// Brute-force ground truth for small cylinders, built directly from the
// vertex rules: arrows of two colors, one in/out pair per color per vertex,
// turn weights omega^{+-1} (black left turn = omega, white opposite), and a
// seam giving left-pointing horizontal arrows on the wrap edge a weight a.
// No R-matrix machinery is used anywhere in this module.

struct OracleLimits {
  int max_vertices = 32;  // 4*L*M <= max_vertices
};

// Sum over all arrow configurations of a 2L x 2M cylinder closed in the
// transfer direction; equals tr(T^M). Throws std::length_error over the cap.
cd arrow_partition_function(int L, int M, const CouplingSet& cpl, OracleLimits limits = {});

// Same quantity from unoriented bicolorings with per-loop weights
// (contractible -> n, horizontal winding w -> a^w + a^{-w}, vertical -> 2).
cd loop_partition_function(int L, int M, const CouplingSet& cpl, OracleLimits limits = {});

// One loop of a decomposed bicoloring (for tests).
struct LoopInfo {
  bool white = false;
  int turning = 0;    // quarter turns, signed (ccw positive)
  int h_winding = 0;  // net seam crossings
  int v_winding = 0;
  int length = 0;
};

// Loop statistics of every bicoloring of the closed 2L x 2M lattice.
std::vector<std::vector<LoopInfo>> enumerate_bicolorings(int L, int M, OracleLimits limits = {});

// <ref| T |ref>: total weight of two-row slabs whose top and bottom vertical
// edges are all white pointing up.
cd reference_slab_weight(int L, const CouplingSet& cpl);

// The two-row two-column block matrix in the benchmark-entry index convention,
// enumerated from the vertex rules; loop_r() must reproduce it exactly.
Eigen::MatrixXcd enumerated_block_r(const CouplingSet& cpl);

}  // namespace fpl2
