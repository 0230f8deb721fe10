#include "bintomo/dual/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bintomo/dual/prox.hpp"
#include "bintomo/kernels/kernels.hpp"

namespace bintomo {

EffectiveProblem make_effective(const SparseOperator& A,
                                std::span<const double> y,
                                std::span<const double> weights) {
  if (static_cast<std::int32_t>(y.size()) != A.rows()) {
    throw std::invalid_argument("data length does not match operator rows");
  }
  std::vector<double> sqrt_w(static_cast<std::size_t>(A.rows()), 1.0);
  if (!weights.empty()) {
    if (weights.size() != y.size()) {
      throw std::invalid_argument("weight length does not match data");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!(weights[i] > 0.0)) {
        throw std::invalid_argument("weights must be positive");
      }
      sqrt_w[i] = std::sqrt(weights[i]);
    }
  }
  EffectiveProblem eff;
  eff.A = A.row_scaled(sqrt_w);
  eff.y.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) eff.y[i] = sqrt_w[i] * y[i];
  return eff;
}

double eval_dual_objective(const SparseOperator& A, std::span<const double> y,
                           std::span<const double> mu,
                           const GreyLevels& levels,
                           std::span<const double> weights) {
  if (mu.size() != y.size()) {
    throw std::invalid_argument("mu length does not match data");
  }
  EffectiveProblem eff = make_effective(A, y, weights);
  std::vector<double> diff(mu.size());
  kernels::axpby(1.0, mu.data(), -1.0, eff.y.data(), diff.data(), mu.size());
  const double quad = 0.5 * kernels::norm2_sq(diff.data(), diff.size());
  std::vector<double> nu = eff.A.adjoint(mu);
  return quad + asym_one_norm(nu, levels);
}

double smoothed_penalty_value(std::span<const double> nu, double eps,
                              const GreyLevels& levels) {
  const double c1 = (std::abs(levels.u1) + std::abs(levels.u0)) / 2.0;
  const double c2 = (std::abs(levels.u1) - std::abs(levels.u0)) / 2.0;
  double acc = 0.0;
  for (double t : nu) acc += c1 * std::sqrt(t * t + eps) + c2 * t;
  return acc;
}

void smoothed_penalty_slope(const double* nu, std::size_t n, double eps,
                            const GreyLevels& levels, double* out) {
  const double c1 = (std::abs(levels.u1) + std::abs(levels.u0)) / 2.0;
  const double c2 = (std::abs(levels.u1) - std::abs(levels.u0)) / 2.0;
  kernels::smooth_abs_grad(nu, eps, out, n);
  for (std::size_t i = 0; i < n; ++i) out[i] = c1 * out[i] + c2;
}

std::vector<double> grad_smoothed_objective(const SparseOperator& A,
                                            std::span<const double> y,
                                            std::span<const double> mu,
                                            double epsilon,
                                            const GreyLevels& levels,
                                            std::span<const double> weights) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (mu.size() != y.size()) {
    throw std::invalid_argument("mu length does not match data");
  }
  EffectiveProblem eff = make_effective(A, y, weights);
  std::vector<double> nu = eff.A.adjoint(mu);
  std::vector<double> slope(nu.size());
  smoothed_penalty_slope(nu.data(), nu.size(), epsilon, levels, slope.data());
  std::vector<double> grad(mu.size());
  eff.A.forward(slope.data(), grad.data());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] += mu[i] - eff.y[i];
  }
  return grad;
}

KktCertifier::KktCertifier(const SparseOperator& Aeff,
                           std::span<const double> yeff,
                           const GreyLevels& levels,
                           const RangeProjector* projector,
                           double zero_threshold)
    : A_(&Aeff),
      y_(yeff.begin(), yeff.end()),
      levels_(levels),
      projector_(projector),
      zero_threshold_(zero_threshold),
      cols_(Aeff) {}

double KktCertifier::residual(std::span<const double> mu,
                              std::span<const double> nu) const {
  const std::size_t m = y_.size();
  const std::size_t n = static_cast<std::size_t>(A_->cols());
  if (mu.size() != m || nu.size() != n) {
    throw std::invalid_argument("kkt residual: shape mismatch");
  }
  const double lo = -std::abs(levels_.u0);
  const double hi = std::abs(levels_.u1);

  // c = P(mu - y)
  std::vector<double> c(m);
  kernels::axpby(1.0, mu.data(), -1.0, y_.data(), c.data(), m);
  if (projector_ != nullptr) {
    std::vector<double> pc(m);
    projector_->apply(c.data(), pc.data());
    c.swap(pc);
  }

  // Pin subgradient components decided by nu, leave the rest free in the box.
  std::vector<double> s(n, 0.0);
  std::vector<std::int32_t> free_idx;
  free_idx.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (nu[j] > zero_threshold_) {
      s[j] = hi;
    } else if (nu[j] < -zero_threshold_) {
      s[j] = lo;
    } else if (cols_.col_norm_sq[j] > 0.0) {
      free_idx.push_back(static_cast<std::int32_t>(j));
    }
  }

  // r = c + A s with the pinned components applied.
  std::vector<double> r = c;
  for (std::size_t j = 0; j < n; ++j) {
    if (s[j] == 0.0) continue;
    for (std::int32_t k = cols_.col_ptr[j]; k < cols_.col_ptr[j + 1]; ++k) {
      r[cols_.row_idx[k]] += cols_.values[k] * s[j];
    }
  }

  // Cyclic coordinate descent over the free components of the box.
  const double scale = std::max(1.0, hi - lo);
  const int max_sweeps = 2000;
  for (int sweep = 0; sweep < max_sweeps && !free_idx.empty(); ++sweep) {
    double max_change = 0.0;
    for (std::int32_t j : free_idx) {
      double num = 0.0;
      for (std::int32_t k = cols_.col_ptr[j]; k < cols_.col_ptr[j + 1]; ++k) {
        num += cols_.values[k] * r[cols_.row_idx[k]];
      }
      double cand = s[j] - num / cols_.col_norm_sq[j];
      cand = std::clamp(cand, lo, hi);
      const double delta = cand - s[j];
      if (delta != 0.0) {
        s[j] = cand;
        for (std::int32_t k = cols_.col_ptr[j]; k < cols_.col_ptr[j + 1];
             ++k) {
          r[cols_.row_idx[k]] += cols_.values[k] * delta;
        }
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    if (max_change <= 1e-14 * scale) break;
  }

  double norm_inf = 0.0;
  for (double v : r) norm_inf = std::max(norm_inf, std::abs(v));
  return norm_inf;
}

double dual_lower_bound(const SparseOperator& Aeff,
                        std::span<const double> yeff,
                        std::span<const double> w) {
  std::vector<double> Aw(yeff.size());
  Aeff.forward(w.data(), Aw.data());
  return kernels::dot(yeff.data(), Aw.data(), Aw.size()) -
         0.5 * kernels::norm2_sq(Aw.data(), Aw.size());
}

}  // namespace bintomo
