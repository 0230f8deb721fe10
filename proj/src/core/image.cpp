#include "bintomo/core/image.hpp"

#include <stdexcept>

namespace bintomo {

BinaryImage BinaryImage::from_values(int n, std::span<const double> values,
                                     const GreyLevels& levels) {
  if (static_cast<int>(values.size()) != n * n) {
    throw std::invalid_argument("image value count does not match grid");
  }
  BinaryImage img;
  img.n = n;
  img.labels.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == levels.u0) {
      img.labels[i] = 0;
    } else if (values[i] == levels.u1) {
      img.labels[i] = 1;
    } else {
      throw std::invalid_argument("non-binary pixel value in image");
    }
  }
  return img;
}

std::vector<double> BinaryImage::to_values(const GreyLevels& levels) const {
  std::vector<double> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = labels[i] ? levels.u1 : levels.u0;
  }
  return out;
}

int TernaryImage::undetermined_count() const {
  int c = 0;
  for (Ternary t : pixels) c += (t == Ternary::Undetermined);
  return c;
}

bool operator==(const BinaryImage& a, const BinaryImage& b) {
  return a.n == b.n && a.labels == b.labels;
}

bool operator==(const TernaryImage& a, const TernaryImage& b) {
  return a.n == b.n && a.pixels == b.pixels;
}

}  // namespace bintomo
