#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bintomo {

struct Triplet {
  std::int32_t row = 0;
  std::int32_t col = 0;
  double value = 0.0;
};

// Row-compressed sparse matrix. Immutable after construction; forward and
// adjoint application are pure, so a single instance can be shared across
// threads.
class SparseOperator {
 public:
  SparseOperator() = default;

  // Sorts entries by (row, col) and sums duplicates, dropping exact zeros.
  static SparseOperator from_triplets(std::int32_t rows, std::int32_t cols,
                                      std::vector<Triplet> entries);

  std::int32_t rows() const { return rows_; }
  std::int32_t cols() const { return cols_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }
  bool is_zero() const { return values_.empty(); }

  void forward(const double* x, double* y) const;   // y = A x
  void adjoint(const double* r, double* out) const; // out = A^T r
  std::vector<double> forward(std::span<const double> x) const;
  std::vector<double> adjoint(std::span<const double> r) const;

  // diag(s) * A; s must have one entry per row.
  SparseOperator row_scaled(std::span<const double> s) const;
  SparseOperator scaled(double factor) const;

  // Largest singular value estimated by power iteration on A^T A.
  double norm_estimate(int iters = 50, std::uint64_t seed = 0x9e3779b9u) const;

  bool all_nonnegative() const;

  const std::vector<std::int32_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::int32_t>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::int32_t rows_ = 0;
  std::int32_t cols_ = 0;
  std::vector<std::int32_t> row_ptr_;
  std::vector<std::int32_t> col_idx_;
  std::vector<double> values_;
};

// Column-compressed view of an operator, for algorithms that walk columns.
struct ColumnAccess {
  std::vector<std::int32_t> col_ptr;
  std::vector<std::int32_t> row_idx;
  std::vector<double> values;
  std::vector<double> col_norm_sq;

  explicit ColumnAccess(const SparseOperator& A);
};

}  // namespace bintomo
