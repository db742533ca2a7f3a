#include "fpl2/bethe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace fpl2 {

namespace {

using json = nlohmann::json;

cd sin_g(double gamma, cd z) { return std::sin(gamma * z); }
cd log_sin_g(double gamma, cd z) { return std::log(std::sin(gamma * z)); }
cd cot_g(double gamma, cd z) { return std::cos(gamma * z) / std::sin(gamma * z); }

// twist eigenvalue ratios of the model: omega^{(1)}=omega^{(2)}=1/a,
// omega^{(3)}=omega^{(4)}=a. The right-hand sides below are the
// pole-cancellation form of the equations (the twist enters once, through
// the vacuum functions).
cd rhs_log(const CouplingSet& cpl, int level, cd u, int L) {
  const double g = cpl.gamma;
  switch (level) {
    case 0:  // (sin gu / sin g(u+1))^L
      return double(L) * (log_sin_g(g, u) - log_sin_g(g, u + 1.0));
    case 1:  // a^{-2}
      return -2.0 * std::log(cpl.a);
    default:  // (sin g(u-1) / sin gu)^L
      return double(L) * (log_sin_g(g, u - 1.0) - log_sin_g(g, u));
  }
}

cd rhs_alg(const CouplingSet& cpl, int level, cd u, int L) {
  const double g = cpl.gamma;
  switch (level) {
    case 0: {
      cd r = 1.0;
      for (int j = 0; j < L; ++j) r *= sin_g(g, u) / sin_g(g, u + 1.0);
      return r;
    }
    case 1:
      return 1.0 / (cpl.a * cpl.a);
    default: {
      cd r = 1.0;
      for (int j = 0; j < L; ++j) r *= sin_g(g, u - 1.0) / sin_g(g, u);
      return r;
    }
  }
}

void check_roots(const RootSet& rs, double tol) {
  for (int i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < rs.roots[i].size(); ++k)
      for (std::size_t l = k + 1; l < rs.roots[i].size(); ++l)
        if (std::abs(rs.roots[i][k] - rs.roots[i][l]) < tol)
          throw std::domain_error("coincident Bethe roots of the same kind");
}

}  // namespace

cd q_function(const RootSet& rs, int level, cd u) {
  if (level <= 0 || level >= 4) return 1.0;
  cd q = 1.0;
  for (const cd& r : rs.roots[level - 1]) q *= sin_g(rs.gamma, u - r);
  return q;
}

std::vector<cd> bae_residual(const RootSet& rs, const CouplingSet& cpl) {
  check_roots(rs, 1e-12);
  std::vector<cd> out;
  out.reserve(rs.total());
  for (int i = 0; i < 3; ++i) {
    for (const cd& u : rs.roots[i]) {
      const cd qp1_shift = q_function(rs, i + 2, u + 1.0);
      const cd qp1 = q_function(rs, i + 2, u);
      const cd qi_minus = q_function(rs, i + 1, u - 1.0);
      const cd qi_plus = q_function(rs, i + 1, u + 1.0);
      const cd qm1 = q_function(rs, i, u);
      const cd qm1_minus = q_function(rs, i, u - 1.0);
      if (std::abs(qp1) < 1e-300 || std::abs(qi_plus) < 1e-300 || std::abs(qm1_minus) < 1e-300)
        throw std::domain_error("Bethe equation denominator vanishes");
      const cd lhs = -(qp1_shift / qp1) * (qi_minus / qi_plus) * (qm1 / qm1_minus);
      out.push_back(lhs - rhs_alg(cpl, i, u, rs.L));
    }
  }
  return out;
}

std::vector<cd> bae_log_residual(const RootSet& rs, const CouplingSet& cpl) {
  const double g = rs.gamma;
  const double pi = std::numbers::pi;
  std::vector<cd> out;
  out.reserve(rs.total());
  for (int i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < rs.roots[i].size(); ++k) {
      const cd u = rs.roots[i][k];
      cd acc = cd(0.0, pi);  // the overall minus sign
      for (const cd& v : (i + 1 < 3 ? rs.roots[i + 1] : std::vector<cd>{}))
        acc += log_sin_g(g, u - v + 1.0) - log_sin_g(g, u - v);
      for (std::size_t l = 0; l < rs.roots[i].size(); ++l) {
        if (l == k) {
          // sin(-g)/sin(g): constant ratio, keep it explicit
          acc += log_sin_g(g, cd(-1.0, 0.0)) - log_sin_g(g, cd(1.0, 0.0));
          continue;
        }
        const cd v = rs.roots[i][l];
        acc += log_sin_g(g, u - v - 1.0) - log_sin_g(g, u - v + 1.0);
      }
      if (i > 0)
        for (const cd& v : rs.roots[i - 1]) acc += log_sin_g(g, u - v) - log_sin_g(g, u - v - 1.0);
      acc -= rhs_log(cpl, i, u, rs.L);
      acc -= cd(0.0, 2.0 * pi * rs.branch_integers[i][k]);
      out.push_back(acc);
    }
  }
  return out;
}

void calibrate_branches(RootSet& rs, const CouplingSet& cpl) {
  for (int i = 0; i < 3; ++i) rs.branch_integers[i].assign(rs.roots[i].size(), 0);
  const auto g0 = bae_log_residual(rs, cpl);
  int idx = 0;
  const double twopi = 2.0 * std::numbers::pi;
  for (int i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < rs.roots[i].size(); ++k, ++idx)
      rs.branch_integers[i][k] = static_cast<int>(std::lround(g0[idx].imag() / twopi));
}

SolveReport solve(RootSet& rs, const CouplingSet& cpl, const SolveOptions& opt) {
  const int n = rs.total();
  SolveReport rep;
  if (n == 0) {
    rep.converged = true;
    return rep;
  }
  const double g = rs.gamma;

  auto pack = [&](const RootSet& r) {
    Eigen::VectorXcd v(n);
    int idx = 0;
    for (int i = 0; i < 3; ++i)
      for (const cd& u : r.roots[i]) v[idx++] = u;
    return v;
  };
  auto unpack = [&](const Eigen::VectorXcd& v, RootSet& r) {
    int idx = 0;
    for (int i = 0; i < 3; ++i)
      for (cd& u : r.roots[i]) u = v[idx++];
  };
  // The Newton path may cross logarithm cuts, which shifts components of the
  // log residual by multiples of 2 pi i; fold them back so the iteration
  // tracks the nearest branch. The recorded integers are recalibrated at the
  // end.
  const double twopi = 2.0 * std::numbers::pi;
  auto fold = [&](std::vector<cd>& r) {
    for (cd& z : r) z = cd(z.real(), z.imag() - twopi * std::lround(z.imag() / twopi));
  };
  auto resid_norm = [&](const std::vector<cd>& r) {
    double m = 0;
    for (const cd& z : r) m = std::max(m, std::abs(z));
    return m;
  };

  // analytic Jacobian of the log-form residual
  auto jacobian = [&](const RootSet& r) {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
    std::array<int, 3> off = {0, r.counts()[0], r.counts()[0] + r.counts()[1]};
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < r.counts()[i]; ++k) {
        const int row = off[i] + k;
        const cd u = r.roots[i][k];
        // derivative wrt u itself
        cd du = 0.0;
        if (i + 1 < 3)
          for (const cd& v : r.roots[i + 1]) du += g * (cot_g(g, u - v + 1.0) - cot_g(g, u - v));
        for (int l = 0; l < r.counts()[i]; ++l) {
          if (l == k) continue;
          const cd v = r.roots[i][l];
          du += g * (cot_g(g, u - v - 1.0) - cot_g(g, u - v + 1.0));
        }
        if (i > 0)
          for (const cd& v : r.roots[i - 1]) du += g * (cot_g(g, u - v) - cot_g(g, u - v - 1.0));
        if (i == 0) du -= double(r.L) * g * (cot_g(g, u) - cot_g(g, u + 1.0));
        if (i == 2) du -= double(r.L) * g * (cot_g(g, u - 1.0) - cot_g(g, u));
        J(row, row) = du;
        // derivatives wrt other roots
        if (i + 1 < 3)
          for (int l = 0; l < r.counts()[i + 1]; ++l) {
            const cd v = r.roots[i + 1][l];
            J(row, off[i + 1] + l) = -g * (cot_g(g, u - v + 1.0) - cot_g(g, u - v));
          }
        for (int l = 0; l < r.counts()[i]; ++l) {
          if (l == k) continue;
          const cd v = r.roots[i][l];
          J(row, off[i] + l) = -g * (cot_g(g, u - v - 1.0) - cot_g(g, u - v + 1.0));
        }
        if (i > 0)
          for (int l = 0; l < r.counts()[i - 1]; ++l) {
            const cd v = r.roots[i - 1][l];
            J(row, off[i - 1] + l) = -g * (cot_g(g, u - v) - cot_g(g, u - v - 1.0));
          }
      }
    }
    return J;
  };

  std::vector<cd> res = bae_log_residual(rs, cpl);
  fold(res);
  double rn = resid_norm(res);
  for (int it = 0; it < opt.max_iterations; ++it) {
    rep.iterations = it;
    if (rn < opt.tolerance) {
      // reject singular solutions (coincident roots of one kind satisfy the
      // folded equations by cancellation but are not eigenstates)
      for (int i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < rs.roots[i].size(); ++k)
          for (std::size_t l = k + 1; l < rs.roots[i].size(); ++l)
            if (std::abs(rs.roots[i][k] - rs.roots[i][l]) < 1e-6) {
              rep.converged = false;
              rep.residual = rn;
              return rep;
            }
      rep.converged = true;
      rep.residual = rn;
      calibrate_branches(rs, cpl);
      return rep;
    }
    const Eigen::MatrixXcd J = jacobian(rs);
    Eigen::VectorXcd rv(n);
    for (int i = 0; i < n; ++i) rv[i] = res[i];
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
    Eigen::VectorXcd step;
    if (lu.isInvertible()) {
      step = lu.solve(rv);
    } else {
      // fall back to a least-squares step near symmetry-induced degeneracies
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
      if (svd.singularValues()[0] < 1e-300)
        throw std::runtime_error("singular Jacobian in Bethe solver");
      step = svd.solve(rv);
    }
    const double step_norm = step.cwiseAbs().maxCoeff();
    if (step_norm > opt.max_step_norm) step *= opt.max_step_norm / step_norm;
    const Eigen::VectorXcd x0 = pack(rs);
    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= opt.min_step) {
      RootSet trial = rs;
      unpack(x0 - alpha * step, trial);
      bool collision = false;
      for (int i = 0; i < 3 && !collision; ++i)
        for (std::size_t k = 0; k < trial.roots[i].size() && !collision; ++k)
          for (std::size_t l = k + 1; l < trial.roots[i].size(); ++l)
            if (std::abs(trial.roots[i][k] - trial.roots[i][l]) < opt.collision_tolerance)
              collision = true;
      if (!collision) {
        try {
          auto rtrial = bae_log_residual(trial, cpl);
          fold(rtrial);
          const double rtn = resid_norm(rtrial);
          if (rtn < rn || alpha == opt.min_step) {
            rs = trial;
            res = rtrial;
            rn = rtn;
            accepted = true;
            break;
          }
        } catch (const std::exception&) {
          // fall through to smaller step
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      rep.residual = rn;
      return rep;
    }
  }
  rep.residual = rn;
  rep.converged = rn < opt.tolerance;
  return rep;
}

namespace {

RootSet nota_real_seed(int L, double gamma, const std::vector<double>& u_vals,
                       const std::vector<double>& w_vals) {
  NotationMap nm;
  int k = 0;
  for (double x : u_vals) {
    // tiny asymmetric jitter keeps the levels from seeding exactly equal,
    // which would make the Newton Jacobian degenerate
    const double eps = 1e-4 * (1 + (k++ % 3));
    nm.u.push_back(cd(x + eps, 0.0));
    nm.v.push_back(cd(x - eps, 0.0));
  }
  for (double x : w_vals) nm.w.push_back(cd(x, 0.0));
  return from_notation(nm, gamma, L);
}

bool try_solve(RootSet& rs, const CouplingSet& cpl) {
  try {
    calibrate_branches(rs, cpl);
    SolveOptions opt;
    opt.max_iterations = 250;
    return solve(rs, cpl, opt).converged;
  } catch (const std::exception&) {
    return false;
  }
}

// sorted real parts of the nota-variables of one level
std::vector<double> nota_positions(const std::vector<cd>& vals) {
  std::vector<double> xs;
  xs.reserve(vals.size());
  for (const cd& z : vals) xs.push_back(z.real());
  std::sort(xs.begin(), xs.end());
  return xs;
}

// quantile-based growth of a sorted pattern by one element
std::vector<double> quantile_extend(const std::vector<double>& xs) {
  const int L = static_cast<int>(xs.size());
  if (L == 1) return {xs[0] - 0.9, xs[0] + 0.9};
  std::vector<double> out(L + 1);
  auto x_of = [&](double p) {
    const double t = p * L - 0.5;
    if (t <= 0.0) return xs[0] + t * (xs[1] - xs[0]);
    if (t >= L - 1) return xs[L - 1] + (t - (L - 1)) * (xs[L - 1] - xs[L - 2]);
    const int k = static_cast<int>(t);
    const double f = t - k;
    return xs[k] * (1.0 - f) + xs[k + 1] * f;
  };
  for (int j = 0; j <= L; ++j) out[j] = x_of((j + 0.5) / (L + 1));
  return out;
}

// The twist displaces the top root well above the Fermi sea (the gap stays
// roughly constant in L), so grow the bulk by quantiles and carry the
// displaced root along with its gap.
std::vector<double> extend_pattern(const std::vector<double>& xs) {
  const int L = static_cast<int>(xs.size());
  if (L <= 2) return quantile_extend(xs);
  const double gap = xs[L - 1] - xs[L - 2];
  std::vector<double> bulk(xs.begin(), xs.end() - 1);
  std::vector<double> out = quantile_extend(bulk);
  out.push_back(out.back() + gap);
  return out;
}

// converged ground-state candidates must have (numerically) real shifted
// variables and stay inside a sane window
bool sane_ground_state(const RootSet& rs) {
  const auto nm = notation_map(rs);
  auto ok = [&](const std::vector<cd>& v) {
    for (const cd& z : v)
      if (std::abs(z.imag()) > 1e-7 || std::abs(z.real()) > 40.0) return false;
    return true;
  };
  return ok(nm.u) && ok(nm.v) && ok(nm.w);
}

}  // namespace

RootSet ground_state(int L, const CouplingSet& cpl) {
  // ground-state roots are real in the shifted variables (u_k, v_k, w_k),
  // with the first and third levels coinciding; continue in the width.
  RootSet rs;
  bool have = false;
  for (double s : {0.9, 0.6, 1.3}) {
    rs = nota_real_seed(1, cpl.gamma, {0.7 * s}, {1.3 * s});
    if (try_solve(rs, cpl) && sane_ground_state(rs)) {
      have = true;
      break;
    }
  }
  if (!have) throw std::runtime_error("Bethe ground state failed at L=1");
  for (int width = 2; width <= L; ++width) {
    const auto nm = notation_map(rs);
    const auto u_next = extend_pattern(nota_positions(nm.u));
    const auto w_next = extend_pattern(nota_positions(nm.w));
    bool ok = false;
    for (double scale : {1.0, 0.9, 1.12, 0.8, 1.25}) {
      std::vector<double> us = u_next, ws = w_next;
      double um = 0, wm = 0;
      for (double x : us) um += x;
      um /= us.size();
      for (double x : ws) wm += x;
      wm /= ws.size();
      for (double& x : us) x = um + (x - um) * scale;
      for (double& x : ws) x = wm + (x - wm) * scale;
      RootSet trial = nota_real_seed(width, cpl.gamma, us, ws);
      if (try_solve(trial, cpl) && sane_ground_state(trial)) {
        rs = trial;
        ok = true;
        break;
      }
    }
    if (!ok) throw std::runtime_error("Bethe width continuation failed at L=" + std::to_string(width));
  }
  canonical_sort(rs);
  return rs;
}

std::vector<RootSet> solve_multistart(int L, const std::array<int, 3>& m, const CouplingSet& cpl,
                                      int tries, unsigned rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> ur(-1.3, 1.3), ui(-2.8, 2.8);
  const double g = cpl.gamma;
  const double half_period = std::numbers::pi / (2.0 * g);  // real shifts by pi/gamma are symmetries
  const double im_cap = 34.0 / g;                           // keep sin() products inside double range

  auto canonicalize = [&](RootSet& rs) {
    for (int i = 0; i < 3; ++i)
      for (cd& z : rs.roots[i]) {
        double re = z.real();
        re = std::remainder(re, 2.0 * half_period);
        z = cd(re, z.imag());
      }
    canonical_sort(rs);
  };
  auto clamp_escape = [&](cd z) {
    const double cap = 6.0 / g;
    if (z.imag() > cap) return cd(0.0, cap);
    if (z.imag() < -cap) return cd(0.0, -cap);
    return z;
  };

  std::vector<RootSet> found;
  for (int t = 0; t < tries; ++t) {
    RootSet rs;
    rs.gamma = g;
    rs.L = L;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < m[i]; ++k) rs.roots[i].push_back(cd(ur(rng), ui(rng)));
      rs.branch_integers[i].assign(m[i], 0);
    }
    try {
      calibrate_branches(rs, cpl);
      SolveOptions opt;
      opt.max_iterations = 90;
      if (!solve(rs, cpl, opt).converged) continue;
      bool escaped = false;
      for (int i = 0; i < 3; ++i)
        for (const cd& z : rs.roots[i])
          if (std::abs(z.imag()) > im_cap || std::abs(z.real()) > 1e3) escaped = true;
      if (escaped) continue;
      const cd tval = eigenvalue_t(rs, cpl);
      if (!std::isfinite(tval.real()) || !std::isfinite(tval.imag())) continue;
      canonicalize(rs);
      bool dup = false;
      for (const auto& f : found) {
        double d = 0;
        for (int i = 0; i < 3; ++i)
          for (std::size_t k = 0; k < f.roots[i].size(); ++k)
            d = std::max(d, std::abs(clamp_escape(f.roots[i][k]) - clamp_escape(rs.roots[i][k])));
        if (d < 1e-6) {
          dup = true;
          break;
        }
      }
      if (!dup) found.push_back(rs);
    } catch (const std::exception&) {
      continue;
    }
  }
  return found;
}

cd eigenvalue_t(const RootSet& rs, const CouplingSet& cpl) {
  auto q2 = [&](double s) { return q_function(rs, 2, cd(s, 0.0)); };
  const cd q20 = q2(0.0);
  const cd q10 = q_function(rs, 1, cd(0.0, 0.0));
  const cd q1m = q_function(rs, 1, cd(-1.0, 0.0));
  const cd q30 = q_function(rs, 3, cd(0.0, 0.0));
  const cd q3p = q_function(rs, 3, cd(1.0, 0.0));
  if (std::abs(q20) < 1e-12 || std::abs(q10) < 1e-12 || std::abs(q1m) < 1e-12 ||
      std::abs(q30) < 1e-12 || std::abs(q3p) < 1e-12)
    throw std::domain_error("wall condition violated: Q vanishes at an evaluation point");
  const cd a2 = cpl.a * cpl.a;
  return 2.0 * q2(1.0) * q2(-1.0) / (q20 * q20) +
         (1.0 / a2) * (q2(1.0) / q20) * (q2(1.0) / q20) * (q1m / q10) * (q30 / q3p) +
         a2 * (q2(-1.0) / q20) * (q2(-1.0) / q20) * (q10 / q1m) * (q3p / q30);
}

cd eigenvalue_t_squared_form(const RootSet& rs, const CouplingSet& cpl) {
  auto q2 = [&](double s) { return q_function(rs, 2, cd(s, 0.0)); };
  const cd q20 = q2(0.0);
  const cd q10 = q_function(rs, 1, cd(0.0, 0.0));
  const cd q1m = q_function(rs, 1, cd(-1.0, 0.0));
  const cd q30 = q_function(rs, 3, cd(0.0, 0.0));
  const cd q3p = q_function(rs, 3, cd(1.0, 0.0));
  const cd s = (1.0 / cpl.a) * (q2(1.0) / q20) * std::sqrt((q1m / q10) * (q30 / q3p)) +
               cpl.a * (q2(-1.0) / q20) * std::sqrt((q10 / q1m) * (q3p / q30));
  return s * s;
}

NotationMap notation_map(const RootSet& rs) {
  NotationMap nm;
  const cd two_i(0.0, 2.0);
  for (const cd& r : rs.roots[0]) nm.u.push_back(two_i * (r + 0.5));
  for (const cd& r : rs.roots[2]) nm.v.push_back(two_i * (r - 0.5));
  for (const cd& r : rs.roots[1]) nm.w.push_back(two_i * r);
  return nm;
}

RootSet from_notation(const NotationMap& nm, double gamma, int L) {
  RootSet rs;
  rs.gamma = gamma;
  rs.L = L;
  const cd two_i(0.0, 2.0);
  for (const cd& u : nm.u) rs.roots[0].push_back(u / two_i - 0.5);
  for (const cd& w : nm.w) rs.roots[1].push_back(w / two_i);
  for (const cd& v : nm.v) rs.roots[2].push_back(v / two_i + 0.5);
  for (int i = 0; i < 3; ++i) rs.branch_integers[i].assign(rs.roots[i].size(), 0);
  return rs;
}

RootSet n_flip(const RootSet& rs, const CouplingSet& cpl) {
  const double g = rs.gamma;
  const double pi = std::numbers::pi;
  if (g < 1e-12 || pi - g < 1e-12) throw std::domain_error("n -> -n transform degenerate at gamma in {0, pi}");
  const double gp = pi - g;
  const double alpha = -g / gp;
  // The image satisfies the equations at gamma' = pi - gamma with the twist
  // inverted (a' = exp(-i gamma'), the conjugate coupling branch), with the
  // same eigenvalue; applying the map twice returns the original roots.
  RootSet out;
  out.gamma = gp;
  out.L = rs.L;
  const double shift = pi / (2.0 * gp);
  for (const cd& u : rs.roots[0]) out.roots[0].push_back(-0.5 + alpha * (u + 0.5) + shift);
  for (const cd& w : rs.roots[1]) out.roots[1].push_back(alpha * w);
  for (const cd& v : rs.roots[2]) out.roots[2].push_back(0.5 + alpha * (v - 0.5) + shift);
  for (int i = 0; i < 3; ++i) out.branch_integers[i].assign(out.roots[i].size(), 0);
  (void)cpl;
  canonical_sort(out);
  return out;
}

void canonical_sort(RootSet& rs) {
  for (int i = 0; i < 3; ++i) {
    const std::size_t n = rs.roots[i].size();
    if (rs.branch_integers[i].size() != n) rs.branch_integers[i].assign(n, 0);
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      const cd a = rs.roots[i][l], b = rs.roots[i][r];
      if (std::abs(a.real() - b.real()) > 1e-12) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    std::vector<cd> roots(n);
    std::vector<int> branch(n);
    for (std::size_t k = 0; k < n; ++k) {
      roots[k] = rs.roots[i][order[k]];
      branch[k] = rs.branch_integers[i][order[k]];
    }
    rs.roots[i] = std::move(roots);
    rs.branch_integers[i] = std::move(branch);
  }
}

void write_root_set_json(std::ostream& os, const RootSet& rs, double residual_norm) {
  json j;
  j["gamma"] = rs.gamma;
  j["L"] = rs.L;
  j["m"] = rs.counts();
  for (int i = 0; i < 3; ++i) {
    json level = json::array();
    for (const cd& r : rs.roots[i]) level.push_back({{"re", r.real()}, {"im", r.imag()}});
    j["roots"].push_back(level);
    j["branch_integers"].push_back(rs.branch_integers[i]);
  }
  j["residual"] = residual_norm;
  os << j.dump(2) << "\n";
}

RootSet read_root_set_json(std::istream& is) {
  json j;
  is >> j;
  RootSet rs;
  rs.gamma = j.at("gamma").get<double>();
  rs.L = j.at("L").get<int>();
  for (int i = 0; i < 3; ++i) {
    for (const auto& e : j.at("roots").at(i)) {
      rs.roots[i].push_back(cd(e.at("re").get<double>(), e.at("im").get<double>()));
    }
    rs.branch_integers[i] = j.at("branch_integers").at(i).get<std::vector<int>>();
  }
  return rs;
}

}  // namespace fpl2
