#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace bintomo {

struct SolverConfig {
  int max_iters = 500;
  double tol_kkt = 1e-6;
  double smoothing_epsilon = 0.1;
  // |nu_i| at or below this counts as an undetermined pixel.
  double zero_threshold = 1e-9;
  int power_iters = 50;
  // Scales the nonsmooth/smoothed penalty; 1 is the real problem, 0 reduces
  // the smoothed solve to plain least squares (test hook).
  double penalty_weight = 1.0;
  int check_every = 10;
  int lbfgs_memory = 10;
  std::int64_t dense_threshold = 1'000'000;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct DualSolution {
  std::vector<double> mu;  // data-space dual variable
  std::vector<double> nu;  // adjoint image of mu under the effective operator
  // Minimized-form value 0.5*||P(mu - y)||^2 + p(nu); P is the range
  // projector in the rank-deficient case, identity otherwise.
  double objective = 0.0;
  // Concave dual split: g = g1 + g2 with g1 the quadratic part plus the data
  // constant and g2 = -p(nu).
  double g1 = 0.0;
  double g2 = 0.0;
  double kkt_residual = std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

}  // namespace bintomo
