#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops shared by all solvers: dense vector arithmetic,
// componentwise thresholding and CSR matrix application. Every kernel has a
// scalar reference implementation and (on x86-64) an AVX2 variant; the active
// backend is picked at runtime from CPU capabilities and can be overridden
// with set_backend() or the BINTOMO_KERNELS environment variable
// ("scalar" / "avx2").
//
// Elementwise kernels produce identical results on every backend; reductions
// and CSR products may differ by rounding since the AVX2 variants reassociate
// the sums.

namespace bintomo::kernels {

enum class Backend { Scalar, Avx2 };

bool avx2_available();
Backend active_backend();
void set_backend(Backend b);

const char* backend_name(Backend b);

// reductions
double dot(const double* x, const double* y, std::size_t n);
double norm2_sq(const double* x, std::size_t n);

// elementwise; out may alias any input
void axpy(double a, const double* x, double* y, std::size_t n);
void axpby(double a, const double* x, double b, const double* y, double* out,
           std::size_t n);
void clamp(const double* x, double lo, double hi, double* out, std::size_t n);
void soft_threshold(const double* x, double tau, double* out, std::size_t n);
void asym_soft_threshold(const double* x, double a, double b, double* out,
                         std::size_t n);
// out[i] = x[i] / sqrt(x[i]^2 + eps)
void smooth_abs_grad(const double* x, double eps, double* out, std::size_t n);

// CSR products: y = A x and out = A^T r
void csr_forward(const std::int32_t* row_ptr, const std::int32_t* col,
                 const double* val, std::size_t rows, const double* x,
                 double* y);
void csr_adjoint(const std::int32_t* row_ptr, const std::int32_t* col,
                 const double* val, std::size_t rows, std::size_t cols,
                 const double* r, double* out);

}  // namespace bintomo::kernels
