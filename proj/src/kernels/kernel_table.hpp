#pragma once

#include <cstddef>
#include <cstdint>

namespace bintomo::kernels::detail {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*norm2_sq)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*axpby)(double, const double*, double, const double*, double*,
                std::size_t);
  void (*clamp)(const double*, double, double, double*, std::size_t);
  void (*soft_threshold)(const double*, double, double*, std::size_t);
  void (*asym_soft_threshold)(const double*, double, double, double*,
                              std::size_t);
  void (*smooth_abs_grad)(const double*, double, double*, std::size_t);
  void (*csr_forward)(const std::int32_t*, const std::int32_t*, const double*,
                      std::size_t, const double*, double*);
  void (*csr_adjoint)(const std::int32_t*, const std::int32_t*, const double*,
                      std::size_t, std::size_t, const double*, double*);
};

const KernelTable& scalar_table();
#if defined(BINTOMO_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace bintomo::kernels::detail
