#include "bintomo/dual/recovery.hpp"

#include <stdexcept>

namespace bintomo {

TernaryImage recover_primal(int n, std::span<const double> nu,
                            const GreyLevels& levels, double zero_threshold) {
  (void)levels;  // grey values matter only when materializing pixel values
  if (zero_threshold < 0.0) {
    throw std::invalid_argument("zero threshold must be nonnegative");
  }
  if (static_cast<int>(nu.size()) != n * n) {
    throw std::invalid_argument("nu length does not match grid");
  }
  TernaryImage img;
  img.n = n;
  img.pixels.resize(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] > zero_threshold) {
      img.pixels[i] = Ternary::High;
    } else if (nu[i] < -zero_threshold) {
      img.pixels[i] = Ternary::Low;
    } else {
      img.pixels[i] = Ternary::Undetermined;
    }
  }
  return img;
}

BinaryImage complete_ternary(const TernaryImage& t, UndeterminedFill fill) {
  BinaryImage img;
  img.n = t.n;
  img.labels.resize(t.pixels.size());
  const int n = t.n;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * n + c;
      switch (t.pixels[i]) {
        case Ternary::High:
          img.labels[i] = 1;
          break;
        case Ternary::Low:
          img.labels[i] = 0;
          break;
        case Ternary::Undetermined: {
          if (fill == UndeterminedFill::LowLevel) {
            img.labels[i] = 0;
          } else if (fill == UndeterminedFill::HighLevel) {
            img.labels[i] = 1;
          } else {
            int votes = 0;
            for (int dr = -1; dr <= 1; ++dr) {
              for (int dc = -1; dc <= 1; ++dc) {
                const int rr = r + dr;
                const int cc = c + dc;
                if ((dr == 0 && dc == 0) || rr < 0 || rr >= n || cc < 0 ||
                    cc >= n) {
                  continue;
                }
                const Ternary nb = t.pixels[static_cast<std::size_t>(rr) * n + cc];
                if (nb == Ternary::High) ++votes;
                if (nb == Ternary::Low) --votes;
              }
            }
            img.labels[i] = votes > 0 ? 1 : 0;
          }
          break;
        }
      }
    }
  }
  return img;
}

}  // namespace bintomo
