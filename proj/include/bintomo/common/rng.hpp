#pragma once

#include <cstdint>
#include <random>

namespace bintomo {

// Seeded generator passed explicitly wherever randomness is needed; there is
// no global RNG anywhere in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    std::normal_distribution<double> dist;
    return dist(eng_);
  }

  std::int64_t poisson(double mean) {
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(eng_);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bintomo
