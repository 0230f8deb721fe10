#pragma once

#include <span>
#include <vector>

#include "bintomo/core/sparse_operator.hpp"

namespace bintomo {

// Conjugate-gradient least squares from x = 0, stopping when
// ||A^T (A x - y)|| <= tol * ||A^T y|| or at the iteration cap.
std::vector<double> solve_least_squares(const SparseOperator& A,
                                        std::span<const double> y,
                                        int max_iters = 1000,
                                        double tol = 1e-6,
                                        int* iters_out = nullptr);

}  // namespace bintomo
