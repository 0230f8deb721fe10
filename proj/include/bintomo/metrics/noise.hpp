#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bintomo {

struct NoisySinogram {
  std::vector<double> values;
  double noise_norm = 0.0;  // realized ||e||, for discrepancy selection
  bool identity = false;    // infinite SNR passthrough
};

// Additive Gaussian noise scaled so 20*log10(||y||/||e||) equals snr_db
// exactly; snr_db = +inf returns the input flagged as identity.
NoisySinogram add_gaussian_noise(std::span<const double> y, double snr_db,
                                 std::uint64_t seed);

struct PoissonSim {
  std::vector<double> values;   // log-transformed noisy sinogram
  std::vector<double> weights;  // matching least-squares weights
  double realized_snr_db = 0.0;
};

// Transmission counts c_i ~ Poisson(I0 * exp(-s*y_i)) with the shared
// attenuation scale; counts are clipped at 1 before the log transform, which
// biases very low I0 runs (documented).
PoissonSim simulate_poisson(std::span<const double> y, double I0,
                            std::uint64_t seed);

}  // namespace bintomo
