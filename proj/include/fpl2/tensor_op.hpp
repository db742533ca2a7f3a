#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fpl2/couplings.hpp"

namespace fpl2 {

// One tensor line: a 4-state edge space, tagged so transfer-matrix assembly
// can keep track of what it is contracting.
struct LineLabel {
  enum class Axis : std::uint8_t { Horizontal, Vertical };
  enum class Rep : std::uint8_t { Fund, Conj };
  Axis axis = Axis::Vertical;
  Rep rep = Rep::Fund;
};

inline LineLabel hline(LineLabel::Rep r) { return {LineLabel::Axis::Horizontal, r}; }
inline LineLabel vline(LineLabel::Rep r) { return {LineLabel::Axis::Vertical, r}; }

// Composite index scheme: a state (s_1,...,s_k), s_j in {1,2,3,4}, with s_1
// the leftmost line, maps to the 1-based index 1 + sum_j (s_j-1) 4^{k-j}.
std::int64_t encode_state(std::span<const int> digits);
std::vector<int> decode_state(std::int64_t index_1based, int num_lines);

// Complex linear operator on a tensor product of 4-state edge spaces.
// Rows are out-states, columns in-states. Stored dense up to
// kDenseThreshold, coordinate-sparse above; the two storage paths must be
// numerically identical (tested exhaustively).
class TensorOperator {
 public:
  using Dense = Eigen::MatrixXcd;
  using Sparse = Eigen::SparseMatrix<cd>;
  using Triplet = Eigen::Triplet<cd>;

  static constexpr std::int64_t kDenseThreshold = 4096;
  static constexpr std::int64_t kDimensionCap = std::int64_t(1) << 26;

  TensorOperator() = default;

  static TensorOperator identity(std::vector<LineLabel> labels);
  static TensorOperator from_dense(Dense m, std::vector<LineLabel> labels);
  static TensorOperator from_triplets(std::int64_t dim, const std::vector<Triplet>& ts,
                                      std::vector<LineLabel> labels, bool force_sparse = false);
  static TensorOperator diagonal(const Eigen::VectorXcd& d, std::vector<LineLabel> labels);

  int num_lines() const { return static_cast<int>(labels_.size()); }
  const std::vector<LineLabel>& line_labels() const { return labels_; }
  std::int64_t dim() const { return dim_; }
  bool is_dense() const { return dense_storage_; }

  cd entry(std::int64_t row0, std::int64_t col0) const;  // 0-based
  cd entry1(std::int64_t row1, std::int64_t col1) const { return entry(row1 - 1, col1 - 1); }

  Dense dense() const;        // materialize (small operators only)
  const Sparse& sparse() const;
  std::int64_t nonzero_count(double tol = 0.0) const;
  cd trace() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  TensorOperator matmul(const TensorOperator& rhs) const;
  TensorOperator scaled(cd factor) const;
  TensorOperator add(const TensorOperator& rhs) const;
  TensorOperator transpose() const;

  // Force a specific storage path (used by the dense/sparse equivalence tests).
  TensorOperator to_dense_storage() const;
  TensorOperator to_sparse_storage() const;

 private:
  std::int64_t dim_ = 0;
  bool dense_storage_ = true;
  std::vector<LineLabel> labels_;
  Dense d_;
  Sparse s_;
};

// Kronecker product, A's lines preceding B's. Throws std::length_error
// above the dimension cap.
TensorOperator tensor_product(const TensorOperator& a, const TensorOperator& b);

// 16x16 operator permuting two 4-state lines: Pi (e_i (x) e_j) = e_j (x) e_i.
TensorOperator permutation_operator();

// Trace out the given lines (0-based positions), preserving the order of the
// remaining ones.
TensorOperator partial_trace_auxiliary(const TensorOperator& a, std::span<const int> aux_lines);

}  // namespace fpl2
