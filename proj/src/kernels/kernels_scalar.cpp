#include <cmath>
#include <cstddef>
#include <cstdint>

#include "kernel_table.hpp"

// Reference kernels. These define the semantics the SIMD variants are
// equivalence-tested against (bit-exact for elementwise ops, tolerance for
// reductions).

namespace bintomo::kernels::detail {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double norm2_sq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void axpby_scalar(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void clamp_scalar(const double* x, double lo, double hi, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i];
    v = v < lo ? lo : v;
    v = v > hi ? hi : v;
    out[i] = v;
  }
}

void soft_threshold_scalar(const double* x, double tau, double* out,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::abs(x[i]) - tau;
    out[i] = m > 0.0 ? std::copysign(m, x[i]) : 0.0;
  }
}

void asym_soft_threshold_scalar(const double* x, double a, double b,
                                double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = x[i];
    if (t >= b) {
      out[i] = t - b;
    } else if (t <= -a) {
      out[i] = t + a;
    } else {
      out[i] = 0.0;
    }
  }
}

void smooth_abs_grad_scalar(const double* x, double eps, double* out,
                            std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] / std::sqrt(x[i] * x[i] + eps);
  }
}

void csr_forward_scalar(const std::int32_t* row_ptr, const std::int32_t* col,
                        const double* val, std::size_t rows, const double* x,
                        double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (std::int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      acc += val[k] * x[col[k]];
    }
    y[i] = acc;
  }
}

void csr_adjoint_scalar(const std::int32_t* row_ptr, const std::int32_t* col,
                        const double* val, std::size_t rows, std::size_t cols,
                        const double* r, double* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double ri = r[i];
    for (std::int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      out[col[k]] += val[k] * ri;
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table = {
      dot_scalar,           norm2_sq_scalar,
      axpy_scalar,          axpby_scalar,
      clamp_scalar,         soft_threshold_scalar,
      asym_soft_threshold_scalar, smooth_abs_grad_scalar,
      csr_forward_scalar,   csr_adjoint_scalar,
  };
  return table;
}

}  // namespace bintomo::kernels::detail
