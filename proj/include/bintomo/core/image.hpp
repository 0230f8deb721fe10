#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bintomo/dual/levels.hpp"

namespace bintomo {

enum class Ternary : std::int8_t { Low = -1, Undetermined = 0, High = 1 };

// Label image on an n-by-n grid: 0 maps to the lower grey level, 1 to the
// upper one. Actual grey values are supplied by GreyLevels where needed.
struct BinaryImage {
  int n = 0;
  std::vector<std::uint8_t> labels;  // row-major, values 0/1

  int cells() const { return n * n; }

  static BinaryImage from_values(int n, std::span<const double> values,
                                 const GreyLevels& levels);
  std::vector<double> to_values(const GreyLevels& levels) const;
};

struct TernaryImage {
  int n = 0;
  std::vector<Ternary> pixels;

  int cells() const { return n * n; }
  int undetermined_count() const;
};

bool operator==(const BinaryImage& a, const BinaryImage& b);
bool operator==(const TernaryImage& a, const TernaryImage& b);

}  // namespace bintomo
