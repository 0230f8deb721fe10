#pragma once

#include <span>
#include <vector>

namespace bintomo {

// Attenuation scale c with max(y_i * c) clipped to 10, shared between the
// weight formula and the Poisson noise simulator.
double attenuation_scale(std::span<const double> y);

// Transmission-CT least-squares weights Lambda_i = I0 * exp(-y_i * c); always
// positive. The exact formula is a documented project choice.
std::vector<double> build_poisson_weights(std::span<const double> y, double I0);

}  // namespace bintomo
