#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bintomo/core/range_projection.hpp"
#include "bintomo/core/sparse_operator.hpp"
#include "bintomo/dual/levels.hpp"

namespace bintomo {

// Row-scaled problem data: Aeff = Lambda^{1/2} A, yeff = Lambda^{1/2} y.
// With unit (or absent) weights the scaling multiplies by 1.0, so weighted
// and unweighted solves share one code path bit for bit.
struct EffectiveProblem {
  SparseOperator A;
  std::vector<double> y;
};

EffectiveProblem make_effective(const SparseOperator& A,
                                std::span<const double> y,
                                std::span<const double> weights);

// Minimized-form dual objective 0.5*||mu - yeff||^2 + p(Aeff^T mu).
double eval_dual_objective(const SparseOperator& A, std::span<const double> y,
                           std::span<const double> mu,
                           const GreyLevels& levels,
                           std::span<const double> weights = {});

// Smoothed asymmetric penalty with matched slopes: each component
// contributes c1*sqrt(t^2 + eps) + c2*t where c1 = (|u1|+|u0|)/2 and
// c2 = (|u1|-|u0|)/2; for levels (-1, 1) this is the plain sqrt(t^2 + eps).
double smoothed_penalty_value(std::span<const double> nu, double eps,
                              const GreyLevels& levels);
void smoothed_penalty_slope(const double* nu, std::size_t n, double eps,
                            const GreyLevels& levels, double* out);

// Gradient of 0.5*||mu - yeff||^2 + sum_j pen_eps((Aeff^T mu)_j).
std::vector<double> grad_smoothed_objective(
    const SparseOperator& A, std::span<const double> y,
    std::span<const double> mu, double epsilon, const GreyLevels& levels,
    std::span<const double> weights = {});

// Optimality certificate for min 0.5*||P(mu - y)||^2 + p(A^T mu): the
// infinity norm of P(mu - y) + A s, minimized in the two-norm over
// subgradients s of p at nu (components with |nu_i| beyond the zero
// threshold are pinned, the rest range over [-|u0|, |u1|]). The inner
// minimization runs a deterministic cyclic coordinate descent, so the value
// is a pure function of (mu, nu) and can be recomputed independently.
class KktCertifier {
 public:
  KktCertifier(const SparseOperator& Aeff, std::span<const double> yeff,
               const GreyLevels& levels, const RangeProjector* projector,
               double zero_threshold);

  double residual(std::span<const double> mu, std::span<const double> nu) const;

 private:
  const SparseOperator* A_;
  std::vector<double> y_;
  GreyLevels levels_;
  const RangeProjector* projector_;
  double zero_threshold_;
  ColumnAccess cols_;
};

// Lower bound on the dual-form optimum from a box-feasible multiplier w:
// G(w) = yeff.(Aeff w) - 0.5*||Aeff w||^2. Together with the objective this
// yields the primal-dual gap estimate.
double dual_lower_bound(const SparseOperator& Aeff,
                        std::span<const double> yeff,
                        std::span<const double> w);

}  // namespace bintomo
