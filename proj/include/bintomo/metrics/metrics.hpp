#pragma once

#include <cstdint>
#include <span>

#include "bintomo/core/image.hpp"
#include "bintomo/core/sparse_operator.hpp"

namespace bintomo {

struct MetricsReport {
  double rms = 0.0;
  double ji = 0.0;  // 1 - (missing + over)/N: pixel accuracy
  std::int64_t missing_count = 0;  // reconstructed u0 where truth is u1
  std::int64_t over_count = 0;     // reconstructed u1 where truth is u0
};

// Euclidean data misfit ||A x - y|| (not divided by the ray count).
double rms(const SparseOperator& A, std::span<const double> x_star,
           std::span<const double> y);

MetricsReport jaccard(const BinaryImage& x_star, const BinaryImage& x_true);

}  // namespace bintomo
