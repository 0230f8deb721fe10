#include "bintomo/metrics/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bintomo/common/rng.hpp"
#include "bintomo/dual/weights.hpp"
#include "bintomo/kernels/kernels.hpp"

namespace bintomo {

NoisySinogram add_gaussian_noise(std::span<const double> y, double snr_db,
                                 std::uint64_t seed) {
  NoisySinogram out;
  out.values.assign(y.begin(), y.end());
  if (std::isinf(snr_db) && snr_db > 0.0) {
    out.identity = true;
    return out;
  }
  if (!std::isfinite(snr_db)) throw std::invalid_argument("bad SNR");
  const double signal = std::sqrt(kernels::norm2_sq(y.data(), y.size()));
  if (signal == 0.0) throw std::invalid_argument("zero signal");

  Rng rng(seed);
  std::vector<double> e(y.size());
  for (double& v : e) v = rng.normal();
  const double enorm = std::sqrt(kernels::norm2_sq(e.data(), e.size()));
  if (enorm == 0.0) throw std::runtime_error("degenerate noise draw");
  const double target = signal * std::pow(10.0, -snr_db / 20.0);
  const double scale = target / enorm;
  kernels::axpy(scale, e.data(), out.values.data(), e.size());
  out.noise_norm = target;
  return out;
}

PoissonSim simulate_poisson(std::span<const double> y, double I0,
                            std::uint64_t seed) {
  if (!(I0 > 0.0)) throw std::invalid_argument("I0 must be positive");
  const double s = attenuation_scale(y);
  PoissonSim out;
  out.values.resize(y.size());
  out.weights = build_poisson_weights(y, I0);

  Rng rng(seed);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double mean = I0 * std::exp(-s * y[i]);
    const double counts =
        std::max<double>(static_cast<double>(rng.poisson(mean)), 1.0);
    out.values[i] = -std::log(counts / I0) / s;
  }

  std::vector<double> e(y.size());
  kernels::axpby(1.0, out.values.data(), -1.0, y.data(), e.data(), e.size());
  const double enorm = std::sqrt(kernels::norm2_sq(e.data(), e.size()));
  const double signal = std::sqrt(kernels::norm2_sq(y.data(), y.size()));
  out.realized_snr_db =
      enorm == 0.0 ? std::numeric_limits<double>::infinity()
                   : 20.0 * std::log10(signal / enorm);
  return out;
}

}  // namespace bintomo
