#include "fpl2/eigs.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace fpl2 {

std::vector<cd> arnoldi_largest(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& mv,
                                std::int64_t dim, const ArnoldiOptions& opt) {
  const int want = opt.num_eigenvalues;
  const int m = std::min<std::int64_t>(std::max(opt.krylov_dimension, 2 * want + 4), dim);
  if (want > dim) throw std::invalid_argument("requested more eigenvalues than the dimension");
  if (static_cast<std::int64_t>(m) == dim) {
    // small space: build the dense matrix column by column and solve exactly
    Eigen::MatrixXcd a(dim, dim);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    for (std::int64_t j = 0; j < dim; ++j) {
      e[j] = 1.0;
      a.col(j) = mv(e);
      e[j] = 0.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
    std::vector<cd> out(es.eigenvalues().data(), es.eigenvalues().data() + dim);
    std::sort(out.begin(), out.end(), [](cd l, cd r) { return std::abs(l) > std::abs(r); });
    out.resize(want);
    return out;
  }

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd v0(dim);
  for (std::int64_t i = 0; i < dim; ++i) v0[i] = cd(u(rng), u(rng));
  v0.normalize();

  Eigen::MatrixXcd V(dim, m + 1);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
  V.col(0) = v0;

  std::vector<cd> prev(want, cd(0, 0));
  for (int restart = 0; restart < opt.max_restarts; ++restart) {
    int start = restart == 0 ? 0 : want;  // thick restart keeps `want` Ritz vectors
    for (int j = start; j < m; ++j) {
      Eigen::VectorXcd w = mv(V.col(j));
      for (int rep = 0; rep < 2; ++rep) {  // modified Gram-Schmidt, twice
        for (int i = 0; i <= j; ++i) {
          const cd h = V.col(i).dot(w);
          if (rep == 0)
            H(i, j) = h;
          else
            H(i, j) += h;
          w -= h * V.col(i);
        }
      }
      const double nrm = w.norm();
      H(j + 1, j) = nrm;
      if (nrm < 1e-14) {
        // invariant subspace found: solve in it
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.topLeftCorner(j + 1, j + 1), false);
        std::vector<cd> out(es.eigenvalues().data(), es.eigenvalues().data() + j + 1);
        std::sort(out.begin(), out.end(), [](cd l, cd r) { return std::abs(l) > std::abs(r); });
        out.resize(std::min<std::size_t>(want, out.size()));
        return out;
      }
      V.col(j + 1) = w / nrm;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.topLeftCorner(m, m), true);
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int l, int r) {
      return std::abs(es.eigenvalues()[l]) > std::abs(es.eigenvalues()[r]);
    });

    std::vector<cd> ritz(want);
    double resid = 0.0;
    for (int i = 0; i < want; ++i) {
      ritz[i] = es.eigenvalues()[order[i]];
      const auto& y = es.eigenvectors().col(order[i]);
      resid = std::max(resid, std::abs(H(m, m - 1) * y[m - 1]));
    }
    double drift = 0.0;
    for (int i = 0; i < want; ++i) drift = std::max(drift, std::abs(ritz[i] - prev[i]));
    if (resid < opt.tolerance || drift < opt.tolerance * 1e-2) return ritz;
    prev = ritz;

    // thick restart: new basis from the leading Ritz vectors
    Eigen::MatrixXcd Y(m, want);
    for (int i = 0; i < want; ++i) Y.col(i) = es.eigenvectors().col(order[i]);
    Eigen::MatrixXcd Vnew = V.leftCols(m) * Y;
    // re-orthonormalize
    for (int i = 0; i < want; ++i) {
      for (int k2 = 0; k2 < i; ++k2) Vnew.col(i) -= Vnew.col(k2).dot(Vnew.col(i)) * Vnew.col(k2);
      Vnew.col(i).normalize();
    }
    V.leftCols(want) = Vnew;
    // keep the residual direction as the next starting vector
    Eigen::VectorXcd r = V.col(m);
    for (int i = 0; i < want; ++i) r -= V.col(i).dot(r) * V.col(i);
    const double rn = r.norm();
    if (rn > 1e-14)
      V.col(want) = r / rn;
    else {
      for (std::int64_t i = 0; i < dim; ++i) r[i] = cd(u(rng), u(rng));
      for (int i = 0; i < want; ++i) r -= V.col(i).dot(r) * V.col(i);
      V.col(want) = r.normalized();
    }
    H.setZero();
    // H for the kept vectors: diag of Ritz values (Schur-like approximation);
    // rebuild exactly by reapplying mv
    for (int i = 0; i < want; ++i) {
      Eigen::VectorXcd w = mv(V.col(i));
      for (int k2 = 0; k2 <= want; ++k2) H(k2, i) = V.col(k2).dot(w);
    }
  }
  throw std::runtime_error("Arnoldi iteration did not converge");
}

}  // namespace fpl2
