#include "bintomo/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernel_table.hpp"

namespace bintomo::kernels {

namespace {

using detail::KernelTable;

bool cpu_has_avx2() {
#if defined(BINTOMO_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &detail::scalar_table();
    case Backend::Avx2:
#if defined(BINTOMO_HAVE_AVX2)
      return &detail::avx2_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

struct State {
  std::atomic<const KernelTable*> table;
  std::atomic<Backend> backend;

  State() {
    Backend b = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
    if (const char* env = std::getenv("BINTOMO_KERNELS")) {
      if (std::strcmp(env, "scalar") == 0) b = Backend::Scalar;
      if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) b = Backend::Avx2;
    }
    backend.store(b);
    table.store(table_for(b));
  }
};

State& state() {
  static State s;
  return s;
}

inline const KernelTable& table() { return *state().table.load(std::memory_order_relaxed); }

}  // namespace

bool avx2_available() { return cpu_has_avx2(); }

Backend active_backend() { return state().backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  const KernelTable* t = table_for(b);
  if (t == nullptr || (b == Backend::Avx2 && !cpu_has_avx2())) {
    throw std::invalid_argument("kernel backend not supported on this host");
  }
  state().backend.store(b);
  state().table.store(t);
}

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

double dot(const double* x, const double* y, std::size_t n) {
  return table().dot(x, y, n);
}

double norm2_sq(const double* x, std::size_t n) { return table().norm2_sq(x, n); }

void axpy(double a, const double* x, double* y, std::size_t n) {
  table().axpy(a, x, y, n);
}

void axpby(double a, const double* x, double b, const double* y, double* out,
           std::size_t n) {
  table().axpby(a, x, b, y, out, n);
}

void clamp(const double* x, double lo, double hi, double* out, std::size_t n) {
  table().clamp(x, lo, hi, out, n);
}

void soft_threshold(const double* x, double tau, double* out, std::size_t n) {
  table().soft_threshold(x, tau, out, n);
}

void asym_soft_threshold(const double* x, double a, double b, double* out,
                         std::size_t n) {
  table().asym_soft_threshold(x, a, b, out, n);
}

void smooth_abs_grad(const double* x, double eps, double* out, std::size_t n) {
  table().smooth_abs_grad(x, eps, out, n);
}

void csr_forward(const std::int32_t* row_ptr, const std::int32_t* col,
                 const double* val, std::size_t rows, const double* x,
                 double* y) {
  table().csr_forward(row_ptr, col, val, rows, x, y);
}

void csr_adjoint(const std::int32_t* row_ptr, const std::int32_t* col,
                 const double* val, std::size_t rows, std::size_t cols,
                 const double* r, double* out) {
  table().csr_adjoint(row_ptr, col, val, rows, cols, r, out);
}

}  // namespace bintomo::kernels
