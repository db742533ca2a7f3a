#include "fpl2/cft_scaling.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpl2 {

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Matrix3d cartan_matrix() {
  Eigen::Matrix3d c;
  c << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  return c;
}
}  // namespace

double central_charge_closed(double gamma) {
  if (gamma < 0.0 || gamma >= kPi) throw std::domain_error("gamma outside [0, pi)");
  const Eigen::Matrix3d c = cartan_matrix();
  Eigen::Vector3d w(0.0, -2.0 * gamma, 0.0);
  const double general = 3.0 - 3.0 / (kPi * (kPi - gamma)) * w.dot(c.inverse() * w);
  const double special = 3.0 - 12.0 * gamma * gamma / (kPi * (kPi - gamma));
  if (std::abs(general - special) > 1e-12)
    throw std::logic_error("central charge forms disagree");
  return special;
}

double conformal_weight(const CoulombCharge& ch, double gamma) {
  for (double x : ch.e)
    if (std::abs(x - std::lround(x)) > 1e-9)
      throw std::domain_error("electric charge not on the weight lattice");
  for (double x : ch.m)
    if (std::abs(x - std::lround(x)) > 1e-9)
      throw std::domain_error("magnetic charge not on the root lattice");

  const Eigen::Matrix3d c = cartan_matrix();
  const double kcoef = 0.5 * (1.0 - gamma / kPi);
  // Gram matrices: fundamental-weight basis -> C^{-1}, simple-root basis -> C.
  const Eigen::Matrix3d gram_weight = c.inverse();
  const Eigen::Matrix3d gram_root = c;

  const Eigen::Vector3d e(ch.e[0], ch.e[1], ch.e[2]);
  const Eigen::Vector3d m(ch.m[0], ch.m[1], ch.m[2]);
  const Eigen::Vector3d e0(0.0, -gamma / kPi, 0.0);

  const double electric = 0.25 / kcoef * e.dot(gram_weight * (e - 2.0 * e0));
  const double magnetic = 0.25 * kcoef * m.dot(gram_root * m);
  return electric + magnetic;
}

FitResult fit_scaling(const ScalingSeries& series, bool cubic_correction) {
  const int n = static_cast<int>(series.widths.size());
  if (n < 3 || series.log_t.size() != series.widths.size())
    throw std::invalid_argument("scaling fit needs at least three (L, log t) points");
  for (int i = 1; i < n; ++i)
    if (series.widths[i] <= series.widths[i - 1])
      throw std::invalid_argument("widths must be strictly increasing");

  const int cols = cubic_correction ? 3 : 2;
  Eigen::MatrixXd a(n, cols);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double L = series.widths[i];
    a(i, 0) = L;
    a(i, 1) = 1.0 / L;
    if (cubic_correction) a(i, 2) = 1.0 / (L * L * L);
    b[i] = series.log_t[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.rank() < cols) throw std::invalid_argument("rank-deficient design in scaling fit");
  const Eigen::VectorXd x = svd.solve(b);
  FitResult out;
  out.f0 = -x[0];
  out.c_effective = 6.0 * x[1] / kPi;
  out.residual_norm = (a * x - b).norm();
  return out;
}

}  // namespace fpl2
