#pragma once

#include <stdexcept>

namespace bintomo {

// The two admissible grey values, u0 < u1.
struct GreyLevels {
  double u0 = -1.0;
  double u1 = 1.0;

  GreyLevels() = default;
  GreyLevels(double lo, double hi) : u0(lo), u1(hi) {
    if (!(u0 < u1)) throw std::invalid_argument("grey levels require u0 < u1");
  }

  static GreyLevels symmetric() { return {-1.0, 1.0}; }
  static GreyLevels zero_one() { return {0.0, 1.0}; }
};

}  // namespace bintomo
