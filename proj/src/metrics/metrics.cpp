#include "bintomo/metrics/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "bintomo/kernels/kernels.hpp"

namespace bintomo {

double rms(const SparseOperator& A, std::span<const double> x_star,
           std::span<const double> y) {
  if (static_cast<std::int32_t>(y.size()) != A.rows()) {
    throw std::invalid_argument("data length does not match operator rows");
  }
  std::vector<double> proj = A.forward(x_star);
  kernels::axpy(-1.0, y.data(), proj.data(), proj.size());
  return std::sqrt(kernels::norm2_sq(proj.data(), proj.size()));
}

MetricsReport jaccard(const BinaryImage& x_star, const BinaryImage& x_true) {
  if (x_star.n != x_true.n) throw std::invalid_argument("shape mismatch");
  MetricsReport rep;
  for (std::size_t i = 0; i < x_star.labels.size(); ++i) {
    if (x_star.labels[i] == 0 && x_true.labels[i] == 1) ++rep.missing_count;
    if (x_star.labels[i] == 1 && x_true.labels[i] == 0) ++rep.over_count;
  }
  const double n = static_cast<double>(x_star.labels.size());
  rep.ji = 1.0 - static_cast<double>(rep.missing_count + rep.over_count) / n;
  return rep;
}

}  // namespace bintomo
