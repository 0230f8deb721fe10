#include "bintomo/baselines/least_squares.hpp"

#include <stdexcept>

#include "bintomo/core/range_projection.hpp"

namespace bintomo {

std::vector<double> solve_least_squares(const SparseOperator& A,
                                        std::span<const double> y,
                                        int max_iters, double tol,
                                        int* iters_out) {
  if (A.is_zero()) throw std::invalid_argument("zero operator");
  if (static_cast<std::int32_t>(y.size()) != A.rows()) {
    throw std::invalid_argument("data length does not match operator rows");
  }
  return cgls_solve(A, y, max_iters, tol, iters_out);
}

}  // namespace bintomo
