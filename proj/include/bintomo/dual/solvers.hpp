#pragma once

#include <span>

#include "bintomo/core/sparse_operator.hpp"
#include "bintomo/dual/levels.hpp"
#include "bintomo/dual/solver_types.hpp"

namespace bintomo {

// Primal-dual (Chambolle-Pock) solver for
//   min_mu 0.5*||mu - y||^2 + p(A^T mu)
// when A has full row rank with rows <= cols, and for the range-projected
// variant 0.5*||P(mu - y)||^2 + p(A^T mu) otherwise. Rank is decided by a
// least-squares probe on random data vectors. Positive weights turn both
// forms into their Lambda^{1/2}-scaled versions.
DualSolution solve_dual_primal_dual(const SparseOperator& A,
                                    std::span<const double> y,
                                    const GreyLevels& levels,
                                    std::span<const double> weights,
                                    const SolverConfig& cfg = {});

// Limited-memory BFGS on the smoothed objective
//   0.5*||mu - y||^2 + sum_j pen_eps((A^T mu)_j),
// stopping when the gradient norm falls under tol*(norm scale of the data).
DualSolution solve_dual_smoothed(const SparseOperator& A,
                                 std::span<const double> y,
                                 const GreyLevels& levels,
                                 std::span<const double> weights,
                                 const SolverConfig& cfg = {});

// Iterative shrinkage on the image-space form for square invertible A:
//   nu_{k+1} = S_{1/L}( nu_k - L^{-1} (A^T A)^{-1} (nu_k - A^T y) )
// with L = ||A^{-1}||_2^2; the objective is nonincreasing per iteration and
// nu_0 = 0 makes the first iterate a thresholded back-substituted data image.
DualSolution prox_gradient_invertible(const SparseOperator& A,
                                      std::span<const double> y,
                                      const SolverConfig& cfg = {});

}  // namespace bintomo
