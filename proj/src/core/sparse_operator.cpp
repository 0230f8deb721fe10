#include "bintomo/core/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bintomo/kernels/kernels.hpp"

namespace bintomo {

SparseOperator SparseOperator::from_triplets(std::int32_t rows,
                                             std::int32_t cols,
                                             std::vector<Triplet> entries) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::invalid_argument("triplet index out of bounds");
    }
    if (!std::isfinite(t.value)) {
      throw std::invalid_argument("non-finite operator coefficient");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  SparseOperator op;
  op.rows_ = rows;
  op.cols_ = cols;
  op.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  op.col_idx_.reserve(entries.size());
  op.values_.reserve(entries.size());

  std::size_t i = 0;
  for (std::int32_t r = 0; r < rows; ++r) {
    op.row_ptr_[r] = static_cast<std::int32_t>(op.values_.size());
    while (i < entries.size() && entries[i].row == r) {
      double v = entries[i].value;
      std::int32_t c = entries[i].col;
      ++i;
      while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
        v += entries[i].value;
        ++i;
      }
      if (v != 0.0) {
        op.col_idx_.push_back(c);
        op.values_.push_back(v);
      }
    }
  }
  op.row_ptr_[rows] = static_cast<std::int32_t>(op.values_.size());
  return op;
}

void SparseOperator::forward(const double* x, double* y) const {
  kernels::csr_forward(row_ptr_.data(), col_idx_.data(), values_.data(),
                       static_cast<std::size_t>(rows_), x, y);
}

void SparseOperator::adjoint(const double* r, double* out) const {
  kernels::csr_adjoint(row_ptr_.data(), col_idx_.data(), values_.data(),
                       static_cast<std::size_t>(rows_),
                       static_cast<std::size_t>(cols_), r, out);
}

std::vector<double> SparseOperator::forward(std::span<const double> x) const {
  if (static_cast<std::int32_t>(x.size()) != cols_) {
    throw std::invalid_argument("forward: vector length does not match cols");
  }
  std::vector<double> y(static_cast<std::size_t>(rows_));
  forward(x.data(), y.data());
  return y;
}

std::vector<double> SparseOperator::adjoint(std::span<const double> r) const {
  if (static_cast<std::int32_t>(r.size()) != rows_) {
    throw std::invalid_argument("adjoint: vector length does not match rows");
  }
  std::vector<double> out(static_cast<std::size_t>(cols_));
  adjoint(r.data(), out.data());
  return out;
}

SparseOperator SparseOperator::row_scaled(std::span<const double> s) const {
  if (static_cast<std::int32_t>(s.size()) != rows_) {
    throw std::invalid_argument("row_scaled: scale length does not match rows");
  }
  SparseOperator op = *this;
  for (std::int32_t r = 0; r < rows_; ++r) {
    for (std::int32_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      op.values_[k] = values_[k] * s[r];
    }
  }
  return op;
}

SparseOperator SparseOperator::scaled(double factor) const {
  SparseOperator op = *this;
  for (double& v : op.values_) v *= factor;
  return op;
}

double SparseOperator::norm_estimate(int iters, std::uint64_t seed) const {
  if (is_zero() || cols_ == 0 || rows_ == 0) return 0.0;
  std::mt19937_64 eng(seed);
  std::vector<double> x(static_cast<std::size_t>(cols_));
  for (double& v : x) {
    v = static_cast<double>(eng() >> 11) * 0x1p-53 * 2.0 - 1.0;
  }
  std::vector<double> y(static_cast<std::size_t>(rows_));
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    forward(x.data(), y.data());
    adjoint(y.data(), x.data());
    lambda = std::sqrt(kernels::norm2_sq(x.data(), x.size()));
    if (lambda == 0.0) return 0.0;
    const double inv = 1.0 / lambda;
    for (double& v : x) v *= inv;
  }
  return std::sqrt(lambda);
}

bool SparseOperator::all_nonnegative() const {
  for (double v : values_) {
    if (v < 0.0) return false;
  }
  return true;
}

ColumnAccess::ColumnAccess(const SparseOperator& A) {
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  const auto& vals = A.values();
  const std::int32_t cols = A.cols();

  col_ptr.assign(static_cast<std::size_t>(cols) + 1, 0);
  for (std::int32_t c : ci) ++col_ptr[static_cast<std::size_t>(c) + 1];
  for (std::int32_t c = 0; c < cols; ++c) col_ptr[c + 1] += col_ptr[c];

  row_idx.resize(ci.size());
  values.resize(ci.size());
  std::vector<std::int32_t> next(col_ptr.begin(), col_ptr.end() - 1);
  for (std::int32_t r = 0; r < A.rows(); ++r) {
    for (std::int32_t k = rp[r]; k < rp[r + 1]; ++k) {
      std::int32_t pos = next[ci[k]]++;
      row_idx[pos] = r;
      values[pos] = vals[k];
    }
  }
  col_norm_sq.assign(static_cast<std::size_t>(cols), 0.0);
  for (std::int32_t c = 0; c < cols; ++c) {
    double acc = 0.0;
    for (std::int32_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k) {
      acc += values[k] * values[k];
    }
    col_norm_sq[c] = acc;
  }
}

}  // namespace bintomo
