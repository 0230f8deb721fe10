#pragma once

#include <span>

#include "bintomo/core/image.hpp"
#include "bintomo/dual/levels.hpp"

namespace bintomo {

// Heaviside-style primal map: pixels with nu above the threshold go to u1,
// below -threshold to u0, the rest stay undetermined (the dual decides only
// pixels with nonzero multipliers).
TernaryImage recover_primal(int n, std::span<const double> nu,
                            const GreyLevels& levels, double zero_threshold);

enum class UndeterminedFill { LowLevel, HighLevel, MajorityVote };

// Fills undetermined pixels to produce a feasible (not necessarily optimal)
// binary image. LowLevel is the documented default; MajorityVote uses the
// determined pixels in the 3x3 neighbourhood and falls back to u0 on ties.
BinaryImage complete_ternary(const TernaryImage& t,
                             UndeterminedFill fill = UndeterminedFill::LowLevel);

}  // namespace bintomo
