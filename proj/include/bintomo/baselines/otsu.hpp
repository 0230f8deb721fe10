#pragma once

#include <span>

#include "bintomo/core/image.hpp"
#include "bintomo/dual/levels.hpp"

namespace bintomo {

// Threshold that maximizes the inter-class variance over a 256-bin histogram
// spanning [min, max]; the smallest maximizing cut wins ties. Constant images
// threshold above the single value (everything maps to u0).
double otsu_threshold_value(std::span<const double> x);

// Segments to u0/u1 labels by the Otsu threshold.
BinaryImage otsu_threshold(int n, std::span<const double> x,
                           const GreyLevels& levels);

}  // namespace bintomo
