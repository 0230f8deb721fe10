#include <cmath>
#include <cstddef>
#include <cstdint>
#include <immintrin.h>

#include "kernel_table.hpp"

// AVX2 kernel variants. Elementwise kernels mirror the scalar operation order
// exactly (no FMA contraction) so results match the reference bit for bit;
// the reductions use FMA with two accumulators and are checked to tolerance.

namespace bintomo::kernels::detail {
namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(v, mask);
}

inline __m256d signbit_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x8000000000000000ULL));
  return _mm256_and_pd(v, mask);
}

inline double hsum_pd(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double norm2_sq_avx2(const double* x, std::size_t n) { return dot_avx2(x, x, n); }

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void axpby_avx2(double a, const double* x, double b, const double* y,
                double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d px = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    __m256d py = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(px, py));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void clamp_avx2(const double* x, double lo, double hi, double* out,
                std::size_t n) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    v = _mm256_max_pd(v, vlo);
    v = _mm256_min_pd(v, vhi);
    _mm256_storeu_pd(out + i, v);
  }
  for (; i < n; ++i) {
    double v = x[i];
    v = v < lo ? lo : v;
    v = v > hi ? hi : v;
    out[i] = v;
  }
}

void soft_threshold_avx2(const double* x, double tau, double* out,
                         std::size_t n) {
  const __m256d vtau = _mm256_set1_pd(tau);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d m = _mm256_sub_pd(abs_pd(v), vtau);
    __m256d keep = _mm256_cmp_pd(m, zero, _CMP_GT_OQ);
    __m256d mag = _mm256_and_pd(_mm256_max_pd(m, zero), keep);
    _mm256_storeu_pd(out + i, _mm256_or_pd(mag, _mm256_and_pd(signbit_pd(v), keep)));
  }
  for (; i < n; ++i) {
    const double m = std::abs(x[i]) - tau;
    out[i] = m > 0.0 ? std::copysign(m, x[i]) : 0.0;
  }
}

void asym_soft_threshold_avx2(const double* x, double a, double b, double* out,
                              std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vma = _mm256_set1_pd(-a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_loadu_pd(x + i);
    __m256d hi = _mm256_cmp_pd(t, vb, _CMP_GE_OQ);
    __m256d lo = _mm256_cmp_pd(t, vma, _CMP_LE_OQ);
    __m256d rhi = _mm256_and_pd(_mm256_sub_pd(t, vb), hi);
    __m256d rlo = _mm256_and_pd(_mm256_sub_pd(t, vma), lo);
    _mm256_storeu_pd(out + i, _mm256_or_pd(rhi, rlo));
  }
  for (; i < n; ++i) {
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

void smooth_abs_grad_avx2(const double* x, double eps, double* out,
                          std::size_t n) {
  const __m256d veps = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d denom = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(v, v), veps));
    _mm256_storeu_pd(out + i, _mm256_div_pd(v, denom));
  }
  for (; i < n; ++i) out[i] = x[i] / std::sqrt(x[i] * x[i] + eps);
}

void csr_forward_avx2(const std::int32_t* row_ptr, const std::int32_t* col,
                      const double* val, std::size_t rows, const double* x,
                      double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int32_t begin = row_ptr[i];
    const std::int32_t end = row_ptr[i + 1];
    __m256d acc = _mm256_setzero_pd();
    std::int32_t k = begin;
    for (; k + 4 <= end; k += 4) {
      __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + k));
      __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(val + k), xv, acc);
    }
    double s = hsum_pd(acc);
    for (; k < end; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table = {
      dot_avx2,           norm2_sq_avx2,
      axpy_avx2,          axpby_avx2,
      clamp_avx2,         soft_threshold_avx2,
      asym_soft_threshold_avx2, smooth_abs_grad_avx2,
      csr_forward_avx2,
      // adjoint is a row-scatter; it stays scalar on every backend
      scalar_table().csr_adjoint,
  };
  return table;
}

}  // namespace bintomo::kernels::detail
