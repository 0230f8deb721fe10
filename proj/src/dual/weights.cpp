#include "bintomo/dual/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace bintomo {

double attenuation_scale(std::span<const double> y) {
  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::abs(v));
  return peak > 10.0 ? 10.0 / peak : 1.0;
}

std::vector<double> build_poisson_weights(std::span<const double> y,
                                          double I0) {
  if (!(I0 > 0.0)) throw std::invalid_argument("I0 must be positive");
  const double c = attenuation_scale(y);
  std::vector<double> w(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    w[i] = I0 * std::exp(-y[i] * c);
  }
  return w;
}

}  // namespace bintomo
