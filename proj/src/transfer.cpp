#include "fpl2/transfer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "fpl2/eigs.hpp"

namespace fpl2 {

namespace {

using Sparse = Eigen::SparseMatrix<cd>;
using Dense = Eigen::MatrixXcd;

Sparse sparse_kron(const Sparse& a, const Sparse& b) {
  Sparse out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<cd>> ts;
  ts.reserve(static_cast<std::size_t>(a.nonZeros()) * b.nonZeros());
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (Sparse::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (Sparse::InnerIterator ib(b, kb); ib; ++ib)
          ts.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                          ia.value() * ib.value());
  out.setFromTriplets(ts.begin(), ts.end());
  return out;
}

// fundamental-line charge vectors, quantum digits 0..3
constexpr double kQ1[4] = {0.75, -0.25, -0.25, -0.25};
constexpr double kQ2[4] = {0.5, 0.5, -0.5, -0.5};
constexpr double kQ3[4] = {0.25, 0.25, 0.25, -0.75};

double pair_charge(int i, int pair_idx0) {
  const int dc = pair_idx0 / 4;  // conjugate line digit
  const int df = pair_idx0 % 4;  // fundamental line digit
  const double* q = i == 1 ? kQ1 : i == 2 ? kQ2 : kQ3;
  return q[df] - q[dc];
}

std::vector<LineLabel> physical_labels(int L) {
  std::vector<LineLabel> labels;
  for (int j = 0; j < L; ++j) {
    labels.push_back(vline(LineLabel::Rep::Conj));
    labels.push_back(vline(LineLabel::Rep::Fund));
  }
  return labels;
}

// At general spectral arguments each elementary factor is normalized to unit
// max-entry; this keeps the transfer family at O(1) scale so that commutator
// tests read against a meaningful absolute tolerance. At the operating point
// (no argument) the reference matrices enter verbatim so the loop-model
// normalization stays exact.
Dense scale_normalized(Dense m, bool active) {
  if (active) {
    const double mx = m.cwiseAbs().maxCoeff();
    if (mx > 0) m /= mx;
  }
  return m;
}

// one-row site operator on (aux, v_c, v_f), 64x64
Dense one_row_site(Rep aux, std::optional<cd> x, const CouplingSet& cpl) {
  auto embed = [](const Dense& op, int la, int lb) {
    Dense out = Dense::Zero(64, 64);
    const int stride[3] = {16, 4, 1};
    int rest = 3 - la - lb;
    for (int ra = 0; ra < 4; ++ra)
      for (int rb = 0; rb < 4; ++rb)
        for (int ca = 0; ca < 4; ++ca)
          for (int cb = 0; cb < 4; ++cb) {
            const cd v = op(4 * ra + rb, 4 * ca + cb);
            if (v == cd(0.0, 0.0)) continue;
            for (int rr = 0; rr < 4; ++rr)
              out(ra * stride[la] + rb * stride[lb] + rr * stride[rest],
                  ca * stride[la] + cb * stride[lb] + rr * stride[rest]) += v;
          }
    return out;
  };
  const Dense r_with_f = scale_normalized(r_elementary({aux, Rep::Fund}, x, cpl), x.has_value());
  const Dense r_with_c = scale_normalized(r_elementary({aux, Rep::Conj}, x, cpl), x.has_value());
  return embed(r_with_f, 0, 2) * embed(r_with_c, 0, 1);
}

// two-row site operator with per-factor normalization at general arguments
Dense two_row_site(std::optional<cd> x, std::optional<cd> y, const CouplingSet& cpl) {
  if (!x && !y) return composite_quantum_r(cpl).dense();
  auto embed = [](const Dense& op, int la, int lb) {
    Dense out = Dense::Zero(256, 256);
    const int stride[4] = {64, 16, 4, 1};
    for (int r = 0; r < 256; ++r) {
      int dr[4];
      int t = r;
      for (int k = 3; k >= 0; --k) {
        dr[k] = t % 4;
        t /= 4;
      }
      for (int a2 = 0; a2 < 4; ++a2)
        for (int b2 = 0; b2 < 4; ++b2) {
          const cd v = op(4 * dr[la] + dr[lb], 4 * a2 + b2);
          if (v == cd(0, 0)) continue;
          out(r, r + (a2 - dr[la]) * stride[la] + (b2 - dr[lb]) * stride[lb]) += v;
        }
    }
    return out;
  };
  const Dense rff = scale_normalized(r_elementary(kFundFund, x, cpl), x.has_value());
  const Dense rfc = scale_normalized(r_elementary(kFundConj, x, cpl), x.has_value());
  const Dense rcf = scale_normalized(r_elementary(kConjFund, y, cpl), y.has_value());
  const Dense rcc = scale_normalized(r_elementary(kConjConj, y, cpl), y.has_value());
  return embed(rff, 0, 3) * embed(rfc, 0, 2) * embed(rcf, 1, 3) * embed(rcc, 1, 2);
}

}  // namespace

Eigen::Vector4cd twist_matrix(const CouplingSet& cpl, Rep rep) {
  Eigen::Vector4cd t;
  const cd a = cpl.a;
  if (rep == Rep::Fund)
    t << 1.0 / a, 1.0 / a, a, a;
  else
    t << a, a, 1.0 / a, 1.0 / a;
  return t;
}

TransferOperator build_transfer(int L, TransferVariant variant, const CouplingSet& cpl,
                                std::optional<cd> x, std::optional<cd> y, int width_cap) {
  if (L < 1 || L > width_cap) throw std::length_error("transfer width outside the configured cap");

  Dense site;
  int aux_dim = 0;
  Eigen::VectorXcd twist;
  switch (variant) {
    case TransferVariant::TwoRowLoop: {
      site = loop_r_internal(cpl).dense();
      aux_dim = 16;
      Eigen::VectorXcd w(16);
      const auto tf = twist_matrix(cpl, Rep::Fund);
      const auto tc = twist_matrix(cpl, Rep::Conj);
      for (int af = 0; af < 4; ++af)
        for (int ac = 0; ac < 4; ++ac) w[af * 4 + ac] = tf[af] * tc[ac];
      twist = w;
      break;
    }
    case TransferVariant::TwoRowQuantum: {
      site = two_row_site(x, y, cpl);
      aux_dim = 16;
      Eigen::VectorXcd w(16);
      const auto tf = twist_matrix(cpl, Rep::Fund);
      const auto tc = twist_matrix(cpl, Rep::Conj);
      for (int af = 0; af < 4; ++af)
        for (int ac = 0; ac < 4; ++ac) w[af * 4 + ac] = tf[af] * tc[ac];
      twist = w;
      break;
    }
    case TransferVariant::OneRowFund: {
      site = one_row_site(Rep::Fund, x, cpl);
      aux_dim = 4;
      twist = twist_matrix(cpl, Rep::Fund);
      break;
    }
    case TransferVariant::OneRowConj: {
      site = one_row_site(Rep::Conj, y ? y : x, cpl);
      aux_dim = 4;
      twist = twist_matrix(cpl, Rep::Conj);
      break;
    }
  }

  // split the site operator into aux blocks of sparse 16x16 physical ops
  std::vector<Sparse> block(aux_dim * aux_dim, Sparse(16, 16));
  {
    std::vector<std::vector<Eigen::Triplet<cd>>> ts(aux_dim * aux_dim);
    for (int r = 0; r < site.rows(); ++r)
      for (int c = 0; c < site.cols(); ++c) {
        const cd v = site(r, c);
        if (v == cd(0.0, 0.0)) continue;
        const int ar = r / 16, pr = r % 16;
        const int ac = c / 16, pc = c % 16;
        ts[ar * aux_dim + ac].emplace_back(pr, pc, v);
      }
    for (int i = 0; i < aux_dim * aux_dim; ++i) {
      block[i].setFromTriplets(ts[i].begin(), ts[i].end());
      block[i].makeCompressed();
    }
  }

  // monodromy: M_k[beta, alpha] accumulated site by site (site 1 most significant)
  std::vector<Sparse> M(aux_dim * aux_dim);
  for (int b = 0; b < aux_dim; ++b)
    for (int a = 0; a < aux_dim; ++a) M[b * aux_dim + a] = Sparse(block[b * aux_dim + a] * twist[a]);
  for (int k = 2; k <= L; ++k) {
    std::vector<Sparse> M2(aux_dim * aux_dim);
    const std::int64_t dim_prev = std::int64_t(1) << (4 * (k - 1));
    for (int bk = 0; bk < aux_dim; ++bk)
      for (int a = 0; a < aux_dim; ++a) {
        Sparse acc(dim_prev * 16, dim_prev * 16);
        for (int bprev = 0; bprev < aux_dim; ++bprev) {
          const Sparse& left = M[bprev * aux_dim + a];
          const Sparse& right = block[bk * aux_dim + bprev];
          if (left.nonZeros() == 0 || right.nonZeros() == 0) continue;
          acc += sparse_kron(left, right);
        }
        M2[bk * aux_dim + a] = std::move(acc);
      }
    M = std::move(M2);
  }
  const std::int64_t dim = std::int64_t(1) << (4 * L);
  Sparse tmat(dim, dim);
  for (int a = 0; a < aux_dim; ++a) tmat += M[a * aux_dim + a];
  tmat.makeCompressed();

  TransferOperator T;
  T.L = L;
  T.variant = variant;
  T.cpl = cpl;
  T.x = x;
  T.y = y;
  std::vector<Eigen::Triplet<cd>> ts;
  ts.reserve(tmat.nonZeros());
  for (int k = 0; k < tmat.outerSize(); ++k)
    for (Sparse::InnerIterator it(tmat, k); it; ++it) ts.emplace_back(it.row(), it.col(), it.value());
  T.matrix = TensorOperator::from_triplets(dim, ts, physical_labels(L));
  return T;
}

TensorOperator charge_operator(int i, int L) {
  if (i < 1 || i > 3) throw std::invalid_argument("charge index must be 1..3");
  const std::int64_t dim = std::int64_t(1) << (4 * L);
  Eigen::VectorXcd diag(dim);
  for (std::int64_t s = 0; s < dim; ++s) {
    double q = 0;
    std::int64_t t = s;
    for (int j = 0; j < L; ++j) {
      q += pair_charge(i, static_cast<int>(t % 16));
      t /= 16;
    }
    diag[s] = q;
  }
  return TensorOperator::diagonal(diag, physical_labels(L));
}

ChargeVector state_charge(std::int64_t state0, int L) {
  double q[3] = {0, 0, 0};
  std::int64_t t = state0;
  for (int j = 0; j < L; ++j) {
    const int p = static_cast<int>(t % 16);
    for (int i = 0; i < 3; ++i) q[i] += pair_charge(i + 1, p);
    t /= 16;
  }
  return {static_cast<int>(std::lround(q[0])), static_cast<int>(std::lround(q[1])),
          static_cast<int>(std::lround(q[2]))};
}

std::vector<std::int64_t> sector_indices(int L, const ChargeVector& sector) {
  std::vector<std::int64_t> idx;
  const std::int64_t dim = std::int64_t(1) << (4 * L);
  for (std::int64_t s = 0; s < dim; ++s)
    if (state_charge(s, L) == sector) idx.push_back(s);
  return idx;
}

std::int64_t reference_state_index(int L) {
  std::int64_t idx = 0;
  for (int j = 0; j < L; ++j) idx = idx * 16 + 12;  // pair digits (conj=4, fund=1) -> 3*4+0
  return idx;
}

std::vector<ChargeVector> all_sectors(int L) {
  std::vector<ChargeVector> out;
  const std::int64_t dim = std::int64_t(1) << (4 * L);
  for (std::int64_t s = 0; s < dim; ++s) out.push_back(state_charge(s, L));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void sort_spectrum(std::vector<cd>& eigs) {
  std::sort(eigs.begin(), eigs.end(), [](cd l, cd r) {
    const double ml = std::abs(l), mr = std::abs(r);
    if (std::abs(ml - mr) > 1e-14 * (1.0 + ml + mr)) return ml > mr;
    return std::arg(l) < std::arg(r);
  });
}

std::vector<cd> sector_spectrum(const TransferOperator& T, const ChargeVector& sector, int k) {
  const auto idx = sector_indices(T.L, sector);
  if (idx.empty()) throw std::invalid_argument("empty charge sector");
  const std::int64_t n = static_cast<std::int64_t>(idx.size());
  std::vector<cd> eigs;
  if (n <= TensorOperator::kDenseThreshold) {
    Eigen::MatrixXcd block(n, n);
    for (std::int64_t r = 0; r < n; ++r)
      for (std::int64_t c = 0; c < n; ++c) block(r, c) = T.matrix.entry(idx[r], idx[c]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(block, false);
    eigs.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    sort_spectrum(eigs);
    if (k < static_cast<int>(eigs.size())) eigs.resize(k);
  } else {
    std::map<std::int64_t, std::int64_t> inv;
    for (std::int64_t i = 0; i < n; ++i) inv[idx[i]] = i;
    const auto& sp = T.matrix.sparse();
    auto mv = [&](const Eigen::VectorXcd& v) {
      Eigen::VectorXcd full = Eigen::VectorXcd::Zero(T.matrix.dim());
      for (std::int64_t i = 0; i < n; ++i) full[idx[i]] = v[i];
      Eigen::VectorXcd out = sp * full;
      Eigen::VectorXcd res(n);
      for (std::int64_t i = 0; i < n; ++i) res[i] = out[idx[i]];
      return res;
    };
    ArnoldiOptions opt;
    opt.num_eigenvalues = k;
    eigs = arnoldi_largest(mv, n, opt);
    sort_spectrum(eigs);
  }
  return eigs;
}

std::vector<cd> full_spectrum(const TransferOperator& T) {
  if (T.matrix.dim() > TensorOperator::kDenseThreshold)
    throw std::length_error("full spectrum only available for dense-sized operators");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(T.matrix.dense(), false);
  std::vector<cd> eigs(es.eigenvalues().data(), es.eigenvalues().data() + T.matrix.dim());
  sort_spectrum(eigs);
  return eigs;
}

}  // namespace fpl2
