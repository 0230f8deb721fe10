#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bintomo/core/sparse_operator.hpp"

namespace bintomo {

struct TvConfig {
  double lambda = 0.0;
  double tol_gap = 1e-4;  // relative duality gap
  bool nonneg = true;
  int max_iters = 4000;
  int check_every = 25;
  int power_iters = 50;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct TvResult {
  std::vector<double> image;
  double final_gap = 0.0;  // relative
  std::vector<double> objective_checkpoints;  // nonincreasing best-so-far
  int iterations = 0;
  bool converged = false;
};

// Forward-difference gradient in both axes with Neumann boundary: 2N rows
// (x-differences then y-differences), boundary rows left empty.
SparseOperator build_gradient_operator(int n);

// Chambolle-Pock on 0.5*||A x - y||^2 + lambda*||D x||_1 (anisotropic), with
// an optional nonnegativity constraint on the pixels. A and D are rescaled
// internally to unit operator norm; the reported objective and gap refer to
// the original scaling. Returns the best objective iterate seen at a
// checkpoint.
TvResult solve_tv(const SparseOperator& A, std::span<const double> y,
                  const SparseOperator& D, const TvConfig& cfg);

// Morozov selection: largest grid value whose TV reconstruction satisfies
// ||A x - y|| <= 1.05 * noise_level, else the grid minimum. A zero noise
// level short-circuits to the grid minimum (no positive lambda can reach a
// zero residual).
double select_lambda_discrepancy(const SparseOperator& A,
                                 std::span<const double> y,
                                 double noise_level,
                                 std::span<const double> lambda_grid,
                                 const TvConfig& base = {});

}  // namespace bintomo
