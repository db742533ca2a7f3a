#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <functional>
#include <vector>

#include "fpl2/couplings.hpp"

namespace fpl2 {

// Largest-modulus eigenvalues of a complex linear operator given only by its
// matrix-vector product, via implicitly restarted Arnoldi (restart by
// thick-restart with the leading Ritz vectors). Deterministic: fixed seed.
struct ArnoldiOptions {
  int num_eigenvalues = 1;
  int krylov_dimension = 24;
  int max_restarts = 300;
  double tolerance = 1e-12;
};

std::vector<cd> arnoldi_largest(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& mv,
                                std::int64_t dim, const ArnoldiOptions& opt);

}  // namespace fpl2
