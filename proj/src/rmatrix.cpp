#include "fpl2/rmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace fpl2 {

namespace {

using Dense = Eigen::MatrixXcd;

cd qpow(cd q, int e) {
  cd r{1.0, 0.0};
  const cd b = e >= 0 ? q : cd(1.0, 0.0) / q;
  for (int i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

int idx(int i, int j) { return 4 * (i - 1) + (j - 1); }  // 0-based composite of (i,j), 1<=i,j<=4

// The four 16x16 check-R matrices at the operating point, in their reference
// form with the overall prefactor c = q^{-1} - q stripped off.
Dense reference_mhat(RepPair p, const CouplingSet& cpl) {
  const cd q = cpl.q;
  Dense m = Dense::Zero(16, 16);
  const bool f1 = p.first == Rep::Fund;
  const bool f2 = p.second == Rep::Fund;
  if (f1 == f2) {
    const cd d = f1 ? q : cd(1.0, 0.0) / q;
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        const int a = idx(i, j), b = idx(j, i);
        m(a, a) = -d;
        m(a, b) = 1.0;
        m(b, a) = 1.0;
        m(b, b) = -1.0 / d;
      }
  } else {
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j) {
        if (i == j) continue;
        m(idx(i, j), idx(j, i)) = 1.0;
        if (f1) {
          const int e = j > i ? 2 * (j - i) - 1 : 2 * (j - i) + 1;
          m(idx(i, i), idx(j, j)) = -qpow(q, e);
        } else {
          m(idx(i, i), idx(j, j)) = -(j > i ? q : cd(1.0, 0.0) / q);
        }
      }
  }
  return m;
}

std::vector<LineLabel> pair_labels(RepPair p) {
  auto rep = [](Rep r) { return r == Rep::Fund ? LineLabel::Rep::Fund : LineLabel::Rep::Conj; };
  return {vline(rep(p.first)), vline(rep(p.second))};
}

// General spectral-parameter check-R matrices, as maps V1 (x) V2 -> V2 (x) V1
// in the standard composite bases (row = out state of V2 (x) V1, column = in
// state of V1 (x) V2). Entries are Laurent polynomials in x, valid at every
// coupling; at x = q^{-1} they reproduce the operating-point matrices entry
// for entry. The mixed forms were pinned down numerically by solving the
// braid relation against the same-representation matrices; the conventional
// labels attach to these maps with the two mixed pairs interchanged.
Dense rcheck_slot(Rep first, Rep second, cd x, const CouplingSet& cpl) {
  const cd q = cpl.q;
  const cd xi = cd(1.0, 0.0) / x;
  const cd c = cd(1.0, 0.0) / q - q;  // q^{-1} - q
  Dense m = Dense::Zero(16, 16);
  if (first == second) {
    // Jimbo form; the conjugate pair is the basis-reversed copy.
    const bool rev = first == Rep::Conj;
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j) {
        if (i == j) {
          m(idx(i, i), idx(i, i)) = q * x - xi / q;
          continue;
        }
        m(idx(j, i), idx(i, j)) += x - xi;
        const bool lower = rev ? (i > j) : (i < j);
        m(idx(i, j), idx(i, j)) += -c * (lower ? xi : x);
      }
    return m;
  }
  // Mixed pairs. Normalization -q^2 matches the reference matrices at x=q^{-1}.
  const cd p = x - qpow(q, -4) * xi;        // permutation entries
  const cd d = x / q - qpow(q, -3) * xi;    // weight-zero diagonal
  const cd up = c * x;                      // (i,i) -> (j,j), j > i, base
  const cd lo = c * qpow(q, -4) * xi;       // j < i, base
  const bool graded = first == Rep::Conj;   // the (c,f) slot carries q^{2(j-i)}
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if (i != j) m(idx(i, j), idx(j, i)) = p;
      const cd grad = graded ? qpow(q, 2 * (j - i)) : cd(1.0, 0.0);
      if (j > i) m(idx(i, i), idx(j, j)) = grad * (graded ? lo : up);
      if (j < i) m(idx(i, i), idx(j, j)) = grad * (graded ? up : lo);
      if (j == i) m(idx(i, i), idx(i, i)) += d;
    }
  return -q * q * m;
}

// conventional label -> typed slot: the mixed labels interchange
Dense rcheck_label(RepPair p, cd x, const CouplingSet& cpl) {
  if (p.first == p.second) return rcheck_slot(p.first, p.second, x, cpl);
  return rcheck_slot(p.second, p.first, x, cpl);
}

Dense perm16() {
  Dense p = Dense::Zero(16, 16);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) p(idx(j, i), idx(i, j)) = 1.0;
  return p;
}

// Rank-1 singlet projector on the typed square V_first (x) V_second.
Dense singlet_projector_slot(Rep first, const CouplingSet& cpl) {
  const cd q = cpl.q;
  cd s = 0.0;
  for (int k = 1; k <= 4; ++k) s += qpow(q, first == Rep::Fund ? 2 * k : -2 * k);
  if (std::abs(s) < 1e-9) {
    throw std::domain_error("singlet norm degenerates at q^8 = 1 (n in {0, +-sqrt(2)})");
  }
  Dense m = Dense::Zero(16, 16);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const cd v = first == Rep::Fund ? qpow(q, 2 * j) : qpow(q, -2 * i);
      m(idx(i, i), idx(j, j)) = v / s;
    }
  return m;
}

// Places a two-line operator onto lines (la, lb) of an n-line space.
Dense embed_two_lines(const Dense& op, int la, int lb, int nlines) {
  const std::int64_t dim = std::int64_t(1) << (2 * nlines);
  Dense out = Dense::Zero(dim, dim);
  std::vector<int> rest;
  for (int l = 0; l < nlines; ++l)
    if (l != la && l != lb) rest.push_back(l);
  const int nrest = static_cast<int>(rest.size());
  const std::int64_t rest_count = std::int64_t(1) << (2 * nrest);

  std::vector<std::int64_t> stride(nlines);
  for (int l = 0; l < nlines; ++l) stride[l] = std::int64_t(1) << (2 * (nlines - 1 - l));

  for (int ra = 0; ra < 4; ++ra)
    for (int rb = 0; rb < 4; ++rb)
      for (int ca = 0; ca < 4; ++ca)
        for (int cb = 0; cb < 4; ++cb) {
          const cd v = op(4 * ra + rb, 4 * ca + cb);
          if (v == cd(0.0, 0.0)) continue;
          for (std::int64_t rmask = 0; rmask < rest_count; ++rmask) {
            std::int64_t base = 0;
            std::int64_t tmp = rmask;
            for (int t = nrest - 1; t >= 0; --t) {
              base += (tmp % 4) * stride[rest[t]];
              tmp /= 4;
            }
            const std::int64_t r = base + ra * stride[la] + rb * stride[lb];
            const std::int64_t c = base + ca * stride[la] + cb * stride[lb];
            out(r, c) += v;
          }
        }
  return out;
}

Eigen::Vector4cd omega_diag(cd omega, int e1, int e2, int e3, int e4) {
  Eigen::Vector4cd d;
  d << qpow(omega, e1), qpow(omega, e2), qpow(omega, e3), qpow(omega, e4);
  return d;
}

std::vector<LineLabel> composite_labels() {
  return {hline(LineLabel::Rep::Fund), hline(LineLabel::Rep::Conj), vline(LineLabel::Rep::Conj),
          vline(LineLabel::Rep::Fund)};
}

// Unchecked R = Pi * check-R for a typed slot, endomorphism of V_a (x) V_b.
// strip_c removes one factor of c = q^{-1}-q at the operating point (used by
// the loop-model normalization, which stays finite at n = +-2).
Dense r_slot(Rep a, Rep b, std::optional<cd> x, const CouplingSet& cpl, bool strip_c) {
  const cd x0 = cd(1.0, 0.0) / cpl.q;
  Dense rc = rcheck_slot(a, b, x ? *x : x0, cpl);
  if (strip_c) {
    if (a == b) {
      rc = reference_mhat({a, b}, cpl);
    } else {
      // mixed reference form = c * mhat under the label interchange
      rc = reference_mhat({b, a}, cpl);
    }
  }
  return perm16() * rc;
}

// internal line order: h_f = 0, h_c = 1, v_c = 2, v_f = 3
Dense composite_m(const CouplingSet& cpl, std::optional<cd> x, std::optional<cd> y, bool strip_c) {
  const Dense r_ff = r_slot(Rep::Fund, Rep::Fund, x, cpl, strip_c);
  const Dense r_fc = r_slot(Rep::Fund, Rep::Conj, x, cpl, strip_c);
  const Dense r_cf = r_slot(Rep::Conj, Rep::Fund, y, cpl, strip_c);
  const Dense r_cc = r_slot(Rep::Conj, Rep::Conj, y, cpl, strip_c);
  const Dense a = embed_two_lines(r_ff, 0, 3, 4) * embed_two_lines(r_fc, 0, 2, 4);
  const Dense b = embed_two_lines(r_cf, 1, 3, 4) * embed_two_lines(r_cc, 1, 2, 4);
  return a * b;
}

Eigen::VectorXcd gauge_vector(const CouplingSet& cpl) {
  const GaugeSet g = gauge_set(cpl);
  Eigen::VectorXcd u(256);
  for (std::int64_t s = 0; s < 256; ++s) {
    const auto d = decode_state(s + 1, 4);
    u[s] = g.u_h_fund[d[0] - 1] * g.u_h_conj[d[1] - 1] * g.u_v_conj[d[2] - 1] * g.u_v_fund[d[3] - 1];
  }
  return u;
}

Dense loop_m(const CouplingSet& cpl) {
  const Dense rq = composite_m(cpl, std::nullopt, std::nullopt, /*strip_c=*/true);
  const Eigen::VectorXcd u = gauge_vector(cpl);
  Dense r(256, 256);
  for (std::int64_t rr = 0; rr < 256; ++rr)
    for (std::int64_t cc = 0; cc < 256; ++cc) r(rr, cc) = rq(rr, cc) * u[cc] / u[rr];
  return r;
}


}  // namespace

TensorOperator rcheck_special(RepPair pair, const CouplingSet& cpl) {
  auto labels = pair_labels(pair);
  std::swap(labels[0], labels[1]);
  const cd c = cd(1.0, 0.0) / cpl.q - cpl.q;
  return TensorOperator::from_dense(c * reference_mhat(pair, cpl), std::move(labels));
}

ProjectorPair projector_pair(RepPair pair, const CouplingSet& cpl) {
  const cd q = cpl.q;
  ProjectorPair pp;
  if (pair.first == pair.second) {
    const cd q2 = q * q;
    const cd denom = q2 - cd(1.0, 0.0) / q2;
    if (std::abs(denom) < 1e-9) {
      throw std::domain_error("projector normalization degenerates at q^4 = 1 (n in {0, +-2})");
    }
    const cd c = cd(1.0, 0.0) / q - q;
    pp.p_special = c * reference_mhat(pair, cpl) / denom;
  } else {
    // singlet projector of the typed square carrying this label's map
    pp.p_special = singlet_projector_slot(pair.second, cpl);
  }
  pp.p_complement = Dense::Identity(16, 16) - pp.p_special;
  return pp;
}

TensorOperator rcheck_general(RepPair pair, cd x, const CouplingSet& cpl) {
  auto labels = pair_labels(pair);
  std::swap(labels[0], labels[1]);
  return TensorOperator::from_dense(rcheck_label(pair, x, cpl), std::move(labels));
}

Eigen::MatrixXcd r_elementary(RepPair pair, std::optional<cd> x, const CouplingSet& cpl) {
  return r_slot(pair.first, pair.second, x, cpl, /*strip_c=*/false);
}

TensorOperator composite_quantum_r(const CouplingSet& cpl, std::optional<cd> x, std::optional<cd> y) {
  return TensorOperator::from_dense(composite_m(cpl, x, y, /*strip_c=*/false), composite_labels());
}

GaugeSet gauge_set(const CouplingSet& cpl) {
  GaugeSet g;
  g.u_h_fund = omega_diag(cpl.omega, 6, 4, 2, 0);
  g.u_h_conj = omega_diag(cpl.omega, 6, 4, 2, 0);
  g.u_v_fund = omega_diag(cpl.omega, 12, 8, 4, 0);
  g.u_v_conj = omega_diag(cpl.omega, -6, -4, -2, 0);
  return g;
}

// Frozen index dictionary between the algebraic gauge picture and the
// block indexing of the benchmark entries, pinned down empirically by three
// entries (at two couplings) plus full agreement with the brute-force block
// enumeration. See loop_r() below for how the pieces compose.
const std::array<int, 4> kLoopValueMap = {1, 0, 3, 2};  // block label -> quantum digit
const std::array<std::array<int, 4>, 4> kLoopPhaseExponents = {{
    {-34, -35, -9, 0},  // h_f
    {10, 19, 1, 0},     // h_c
    {28, 31, 7, 0},     // v_c
    {-46, -43, -13, 0}  // v_f
}};

TensorOperator loop_r_internal(const CouplingSet& cpl) {
  return TensorOperator::from_dense(loop_m(cpl), composite_labels());
}

TensorOperator loop_r(const CouplingSet& cpl) {
  const Dense m = loop_m(cpl);
  // weight-lattice phase twist: a refinement of the gauge choice U under
  // which the block indexing carries pure omega-power entries
  Eigen::VectorXcd dvec(256);
  for (int s = 0; s < 256; ++s) {
    int dg[4];
    int t = s;
    for (int k = 3; k >= 0; --k) {
      dg[k] = t % 4;
      t /= 4;
    }
    int e = 0;
    for (int k = 0; k < 4; ++k) e += kLoopPhaseExponents[k][dg[k]];
    dvec[s] = qpow(cpl.omega, e);
  }
  // Block indexing: the row index collects the four dangling edges above the
  // two added rows (both ends of the upper horizontal line, then the two
  // vertical tops), the column index the four below. Relative to the
  // scattering picture this regroups the horizontal line ends, so row and
  // column digits each mix into both sides of the algebraic matrix.
  Dense out(256, 256);
  for (int pr = 0; pr < 256; ++pr)
    for (int pc = 0; pc < 256; ++pc) {
      int rd[4], cdg[4];
      int t = pr;
      for (int k = 3; k >= 0; --k) {
        rd[k] = kLoopValueMap[t % 4];
        t /= 4;
      }
      t = pc;
      for (int k = 3; k >= 0; --k) {
        cdg[k] = kLoopValueMap[t % 4];
        t /= 4;
      }
      const int ar = ((rd[1] * 4 + cdg[1]) * 4 + rd[3]) * 4 + rd[2];
      const int ac = ((rd[0] * 4 + cdg[0]) * 4 + cdg[3]) * 4 + cdg[2];
      out(pr, pc) = m(ar, ac) * dvec[ac] / dvec[ar];
    }
  return TensorOperator::from_dense(
      std::move(out), {hline(LineLabel::Rep::Fund), hline(LineLabel::Rep::Conj),
                       vline(LineLabel::Rep::Fund), vline(LineLabel::Rep::Conj)});
}

void dump_operator_csv(std::ostream& os, const TensorOperator& op, double tol) {
  os << "row,col,re,im\n";
  char buf[128];
  for (std::int64_t r = 0; r < op.dim(); ++r)
    for (std::int64_t c = 0; c < op.dim(); ++c) {
      const cd v = op.entry(r, c);
      if (std::abs(v) <= tol) continue;
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%.15g,%.15g\n", static_cast<long long>(r + 1),
                    static_cast<long long>(c + 1), v.real(), v.imag());
      os << buf;
    }
}

}  // namespace fpl2
