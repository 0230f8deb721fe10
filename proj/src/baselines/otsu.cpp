#include "bintomo/baselines/otsu.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace bintomo {
namespace {

constexpr int kBins = 256;

struct Histogram {
  std::array<std::int64_t, kBins> counts{};
  double lo = 0.0;
  double hi = 0.0;
  bool constant = false;
};

Histogram build_histogram(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("empty image");
  Histogram h;
  h.lo = x[0];
  h.hi = x[0];
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite pixel");
    h.lo = std::min(h.lo, v);
    h.hi = std::max(h.hi, v);
  }
  if (h.lo == h.hi) {
    h.constant = true;
    return h;
  }
  const double scale = kBins / (h.hi - h.lo);
  for (double v : x) {
    int bin = static_cast<int>((v - h.lo) * scale);
    bin = std::clamp(bin, 0, kBins - 1);
    ++h.counts[bin];
  }
  return h;
}

// Smallest cut t (class 0 = bins [0,t)) maximizing the inter-class variance.
int best_cut(const Histogram& h) {
  std::int64_t total = 0;
  double moment = 0.0;
  for (int b = 0; b < kBins; ++b) {
    total += h.counts[b];
    moment += static_cast<double>(b) * h.counts[b];
  }
  double best = -1.0;
  int best_t = kBins;  // everything below the cut -> all-u0 fallback
  std::int64_t n0 = 0;
  double m0 = 0.0;
  for (int t = 1; t < kBins; ++t) {
    n0 += h.counts[t - 1];
    m0 += static_cast<double>(t - 1) * h.counts[t - 1];
    const std::int64_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const double mean0 = m0 / n0;
    const double mean1 = (moment - m0) / n1;
    const double d = mean0 - mean1;
    const double bcv = static_cast<double>(n0) * static_cast<double>(n1) * d * d;
    if (bcv > best) {
      best = bcv;
      best_t = t;
    }
  }
  return best_t;
}

}  // namespace

double otsu_threshold_value(std::span<const double> x) {
  Histogram h = build_histogram(x);
  if (h.constant) return h.lo + 1.0;  // above everything: all-u0
  const int t = best_cut(h);
  return h.lo + t * (h.hi - h.lo) / kBins;
}

BinaryImage otsu_threshold(int n, std::span<const double> x,
                           const GreyLevels& levels) {
  (void)levels;
  if (static_cast<int>(x.size()) != n * n) {
    throw std::invalid_argument("image size does not match grid");
  }
  Histogram h = build_histogram(x);
  BinaryImage img;
  img.n = n;
  img.labels.assign(x.size(), 0);
  if (h.constant) return img;
  const int t = best_cut(h);
  const double scale = kBins / (h.hi - h.lo);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int bin = std::clamp(static_cast<int>((x[i] - h.lo) * scale), 0,
                               kBins - 1);
    img.labels[i] = bin >= t ? 1 : 0;
  }
  return img;
}

}  // namespace bintomo
