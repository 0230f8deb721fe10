#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bintomo/core/sparse_operator.hpp"

namespace bintomo {

struct RangeProjectionConfig {
  // Operators with rows*cols at or below this use a thin SVD; larger ones
  // solve a least-squares problem per application.
  std::int64_t dense_threshold = 1'000'000;
  int max_iters = 0;  // 0: 2*(rows+cols)+200
  double tol = 1e-12;
  double rank_rel_tol = 1e-10;
};

// Orthogonal projector onto range(A), applied as P r = A z with
// z = argmin ||A z - r||. Construction factors the operator once on the dense
// path, so repeated applications are cheap.
class RangeProjector {
 public:
  explicit RangeProjector(const SparseOperator& A,
                          RangeProjectionConfig cfg = {});
  ~RangeProjector();
  RangeProjector(RangeProjector&&) noexcept;
  RangeProjector& operator=(RangeProjector&&) noexcept;

  void apply(const double* r, double* out) const;
  std::vector<double> apply(std::span<const double> r) const;

  bool dense_path() const;
  int rank() const;  // -1 on the iterative path

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<double> project_onto_range(const SparseOperator& A,
                                       std::span<const double> r,
                                       RangeProjectionConfig cfg = {});

// Least-squares residual probe on random data vectors: full row rank iff
// every probe is reproduced by a point in the range.
bool probe_full_row_rank(const SparseOperator& A, double threshold = 1e-8,
                         int probes = 3, std::uint64_t seed = 0x51a7eull);

// min_z ||A z - r|| from z = 0 via CGLS. Returns z; iterations spent are
// written to iters_out when non-null.
std::vector<double> cgls_solve(const SparseOperator& A,
                               std::span<const double> r, int max_iters,
                               double tol, int* iters_out = nullptr);

}  // namespace bintomo
