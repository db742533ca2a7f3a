#include "fpl2/tensor_op.hpp"

#include <stdexcept>

namespace fpl2 {

namespace {

std::int64_t pow4(int k) { return std::int64_t(1) << (2 * k); }

}  // namespace

std::int64_t encode_state(std::span<const int> digits) {
  std::int64_t idx = 0;
  for (int s : digits) {
    if (s < 1 || s > 4) throw std::out_of_range("edge state outside 1..4");
    idx = idx * 4 + (s - 1);
  }
  return idx + 1;
}

std::vector<int> decode_state(std::int64_t index_1based, int num_lines) {
  std::int64_t r = index_1based - 1;
  if (r < 0 || r >= pow4(num_lines)) throw std::out_of_range("composite index out of range");
  std::vector<int> digits(num_lines);
  for (int j = num_lines - 1; j >= 0; --j) {
    digits[j] = static_cast<int>(r % 4) + 1;
    r /= 4;
  }
  return digits;
}

TensorOperator TensorOperator::identity(std::vector<LineLabel> labels) {
  const std::int64_t d = pow4(static_cast<int>(labels.size()));
  TensorOperator t;
  t.dim_ = d;
  t.labels_ = std::move(labels);
  if (d <= kDenseThreshold) {
    t.dense_storage_ = true;
    t.d_ = Dense::Identity(d, d);
  } else {
    t.dense_storage_ = false;
    t.s_.resize(d, d);
    t.s_.setIdentity();
  }
  return t;
}

TensorOperator TensorOperator::from_dense(Dense m, std::vector<LineLabel> labels) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator must be square");
  if (m.rows() != pow4(static_cast<int>(labels.size())))
    throw std::invalid_argument("dimension does not match line count");
  TensorOperator t;
  t.dim_ = m.rows();
  t.labels_ = std::move(labels);
  if (t.dim_ <= kDenseThreshold) {
    t.dense_storage_ = true;
    t.d_ = std::move(m);
  } else {
    t.dense_storage_ = false;
    t.s_ = m.sparseView();
    t.s_.makeCompressed();
  }
  return t;
}

TensorOperator TensorOperator::from_triplets(std::int64_t dim, const std::vector<Triplet>& ts,
                                             std::vector<LineLabel> labels, bool force_sparse) {
  if (dim != pow4(static_cast<int>(labels.size())))
    throw std::invalid_argument("dimension does not match line count");
  TensorOperator t;
  t.dim_ = dim;
  t.labels_ = std::move(labels);
  if (dim <= kDenseThreshold && !force_sparse) {
    t.dense_storage_ = true;
    t.d_ = Dense::Zero(dim, dim);
    for (const auto& e : ts) t.d_(e.row(), e.col()) += e.value();
  } else {
    t.dense_storage_ = false;
    t.s_.resize(dim, dim);
    t.s_.setFromTriplets(ts.begin(), ts.end());
    t.s_.makeCompressed();
  }
  return t;
}

TensorOperator TensorOperator::diagonal(const Eigen::VectorXcd& d, std::vector<LineLabel> labels) {
  std::vector<Triplet> ts;
  ts.reserve(d.size());
  for (std::int64_t i = 0; i < d.size(); ++i)
    if (d[i] != cd(0.0, 0.0)) ts.emplace_back(i, i, d[i]);
  return from_triplets(d.size(), ts, std::move(labels));
}

cd TensorOperator::entry(std::int64_t r, std::int64_t c) const {
  if (r < 0 || r >= dim_ || c < 0 || c >= dim_) throw std::out_of_range("entry index out of range");
  return dense_storage_ ? d_(r, c) : s_.coeff(r, c);
}

TensorOperator::Dense TensorOperator::dense() const {
  if (dense_storage_) return d_;
  return Dense(s_);
}

const TensorOperator::Sparse& TensorOperator::sparse() const {
  if (dense_storage_) throw std::logic_error("operator stored dense; convert first");
  return s_;
}

std::int64_t TensorOperator::nonzero_count(double tol) const {
  std::int64_t n = 0;
  if (dense_storage_) {
    for (std::int64_t c = 0; c < dim_; ++c)
      for (std::int64_t r = 0; r < dim_; ++r)
        if (std::abs(d_(r, c)) > tol) ++n;
  } else {
    for (int k = 0; k < s_.outerSize(); ++k)
      for (Sparse::InnerIterator it(s_, k); it; ++it)
        if (std::abs(it.value()) > tol) ++n;
  }
  return n;
}

cd TensorOperator::trace() const {
  if (dense_storage_) return d_.trace();
  cd t = 0.0;
  for (std::int64_t i = 0; i < dim_; ++i) t += s_.coeff(i, i);
  return t;
}

Eigen::VectorXcd TensorOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  return dense_storage_ ? Eigen::VectorXcd(d_ * v) : Eigen::VectorXcd(s_ * v);
}

TensorOperator TensorOperator::matmul(const TensorOperator& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("operator dimension mismatch");
  TensorOperator t;
  t.dim_ = dim_;
  t.labels_ = labels_;
  if (dense_storage_ && rhs.dense_storage_) {
    t.dense_storage_ = true;
    t.d_ = d_ * rhs.d_;
  } else {
    t.dense_storage_ = false;
    const Sparse a = dense_storage_ ? Sparse(d_.sparseView()) : s_;
    const Sparse b = rhs.dense_storage_ ? Sparse(rhs.d_.sparseView()) : rhs.s_;
    t.s_ = a * b;
    t.s_.makeCompressed();
  }
  return t;
}

TensorOperator TensorOperator::scaled(cd factor) const {
  TensorOperator t = *this;
  if (t.dense_storage_)
    t.d_ *= factor;
  else
    t.s_ *= factor;
  return t;
}

TensorOperator TensorOperator::add(const TensorOperator& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("operator dimension mismatch");
  TensorOperator t;
  t.dim_ = dim_;
  t.labels_ = labels_;
  if (dense_storage_ && rhs.dense_storage_) {
    t.dense_storage_ = true;
    t.d_ = d_ + rhs.d_;
  } else {
    t.dense_storage_ = false;
    const Sparse a = dense_storage_ ? Sparse(d_.sparseView()) : s_;
    const Sparse b = rhs.dense_storage_ ? Sparse(rhs.d_.sparseView()) : rhs.s_;
    t.s_ = a + b;
    t.s_.makeCompressed();
  }
  return t;
}

TensorOperator TensorOperator::transpose() const {
  TensorOperator t = *this;
  if (t.dense_storage_)
    t.d_ = d_.transpose().eval();
  else
    t.s_ = Sparse(s_.transpose());
  return t;
}

TensorOperator TensorOperator::to_dense_storage() const {
  TensorOperator t = *this;
  if (!t.dense_storage_) {
    t.d_ = Dense(s_);
    t.s_.resize(0, 0);
    t.dense_storage_ = true;
  }
  return t;
}

TensorOperator TensorOperator::to_sparse_storage() const {
  TensorOperator t = *this;
  if (t.dense_storage_) {
    t.s_ = t.d_.sparseView();
    t.s_.makeCompressed();
    t.d_.resize(0, 0);
    t.dense_storage_ = false;
  }
  return t;
}

TensorOperator tensor_product(const TensorOperator& a, const TensorOperator& b) {
  const std::int64_t dim = a.dim() * b.dim();
  if (dim > TensorOperator::kDimensionCap)
    throw std::length_error("tensor product exceeds the configured dimension cap");
  std::vector<LineLabel> labels = a.line_labels();
  labels.insert(labels.end(), b.line_labels().begin(), b.line_labels().end());

  if (a.is_dense() && b.is_dense() && dim <= TensorOperator::kDenseThreshold) {
    const auto& da = a.dense();
    const auto& db = b.dense();
    TensorOperator::Dense m(dim, dim);
    for (std::int64_t i = 0; i < a.dim(); ++i)
      for (std::int64_t j = 0; j < a.dim(); ++j)
        m.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = da(i, j) * db;
    return TensorOperator::from_dense(std::move(m), std::move(labels));
  }

  const TensorOperator sa = a.is_dense() ? a.to_sparse_storage() : a;
  const TensorOperator sb = b.is_dense() ? b.to_sparse_storage() : b;
  std::vector<TensorOperator::Triplet> ts;
  ts.reserve(static_cast<std::size_t>(sa.sparse().nonZeros()) * sb.sparse().nonZeros());
  for (int ka = 0; ka < sa.sparse().outerSize(); ++ka)
    for (TensorOperator::Sparse::InnerIterator ia(sa.sparse(), ka); ia; ++ia)
      for (int kb = 0; kb < sb.sparse().outerSize(); ++kb)
        for (TensorOperator::Sparse::InnerIterator ib(sb.sparse(), kb); ib; ++ib)
          ts.emplace_back(ia.row() * b.dim() + ib.row(), ia.col() * b.dim() + ib.col(),
                          ia.value() * ib.value());
  return TensorOperator::from_triplets(dim, ts, std::move(labels), dim > TensorOperator::kDenseThreshold);
}

TensorOperator permutation_operator() {
  std::vector<TensorOperator::Triplet> ts;
  ts.reserve(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ts.emplace_back(j * 4 + i, i * 4 + j, cd(1.0, 0.0));
  return TensorOperator::from_triplets(16, ts, {vline(LineLabel::Rep::Fund), vline(LineLabel::Rep::Fund)});
}

TensorOperator partial_trace_auxiliary(const TensorOperator& a, std::span<const int> aux_lines) {
  const int k = a.num_lines();
  std::vector<bool> traced(k, false);
  for (int l : aux_lines) {
    if (l < 0 || l >= k) throw std::out_of_range("invalid line index in partial trace");
    if (traced[l]) throw std::invalid_argument("duplicate line index in partial trace");
    traced[l] = true;
  }
  std::vector<int> kept;
  std::vector<LineLabel> labels;
  for (int l = 0; l < k; ++l)
    if (!traced[l]) {
      kept.push_back(l);
      labels.push_back(a.line_labels()[l]);
    }
  const int kr = static_cast<int>(kept.size());
  const std::int64_t out_dim = pow4(kr);

  auto split = [&](std::int64_t full, std::vector<int>& digits) {
    for (int l = k - 1; l >= 0; --l) {
      digits[l] = static_cast<int>(full % 4);
      full /= 4;
    }
  };
  auto kept_index = [&](const std::vector<int>& digits) {
    std::int64_t idx = 0;
    for (int l : kept) idx = idx * 4 + digits[l];
    return idx;
  };
  auto traced_match = [&](const std::vector<int>& dr, const std::vector<int>& dc) {
    for (int l = 0; l < k; ++l)
      if (traced[l] && dr[l] != dc[l]) return false;
    return true;
  };

  std::vector<TensorOperator::Triplet> ts;
  std::vector<int> dr(k), dc(k);
  if (a.is_dense()) {
    const auto& m = a.dense();
    for (std::int64_t r = 0; r < a.dim(); ++r) {
      split(r, dr);
      for (std::int64_t c = 0; c < a.dim(); ++c) {
        if (m(r, c) == cd(0.0, 0.0)) continue;
        split(c, dc);
        if (!traced_match(dr, dc)) continue;
        ts.emplace_back(kept_index(dr), kept_index(dc), m(r, c));
      }
    }
  } else {
    const auto& s = a.sparse();
    for (int kk = 0; kk < s.outerSize(); ++kk)
      for (TensorOperator::Sparse::InnerIterator it(s, kk); it; ++it) {
        split(it.row(), dr);
        split(it.col(), dc);
        if (!traced_match(dr, dc)) continue;
        ts.emplace_back(kept_index(dr), kept_index(dc), it.value());
      }
  }
  return TensorOperator::from_triplets(out_dim, ts, std::move(labels),
                                       !a.is_dense() && out_dim > TensorOperator::kDenseThreshold);
}

}  // namespace fpl2
