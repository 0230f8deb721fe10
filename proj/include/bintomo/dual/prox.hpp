#pragma once

#include <cmath>
#include <span>

#include "bintomo/dual/levels.hpp"

namespace bintomo {

// S_tau(t) = max(|t| - tau, 0) sign(t)
inline double soft_threshold(double t, double tau) {
  const double m = std::abs(t) - tau;
  return m > 0.0 ? std::copysign(m, t) : 0.0;
}

// Proximal map of the asymmetric one-norm with margins a, b >= 0
// (callers pass a = lambda*|u0|, b = lambda*|u1|):
//   t - b  for t >= b,   0  for -a < t < b,   t + a  for t <= -a.
inline double asym_soft_threshold(double t, double a, double b) {
  if (t >= b) return t - b;
  if (t <= -a) return t + a;
  return 0.0;
}

// p(x) = sum_i |u0| max(-x_i, 0) + |u1| max(x_i, 0); the one-norm when
// |u0| = |u1| = 1.
inline double asym_one_norm(std::span<const double> x,
                            const GreyLevels& levels) {
  const double lo = std::abs(levels.u0);
  const double hi = std::abs(levels.u1);
  double acc = 0.0;
  for (double v : x) acc += v >= 0.0 ? hi * v : lo * (-v);
  return acc;
}

}  // namespace bintomo
