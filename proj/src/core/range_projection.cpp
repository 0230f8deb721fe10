#include "bintomo/core/range_projection.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bintomo/kernels/kernels.hpp"

namespace bintomo {
namespace {

Eigen::MatrixXd to_dense(const SparseOperator& A) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(A.rows(), A.cols());
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  const auto& v = A.values();
  for (std::int32_t r = 0; r < A.rows(); ++r) {
    for (std::int32_t k = rp[r]; k < rp[r + 1]; ++k) M(r, ci[k]) = v[k];
  }
  return M;
}

}  // namespace

std::vector<double> cgls_solve(const SparseOperator& A,
                               std::span<const double> r, int max_iters,
                               double tol, int* iters_out) {
  const std::size_t m = static_cast<std::size_t>(A.rows());
  const std::size_t nc = static_cast<std::size_t>(A.cols());
  if (r.size() != m) throw std::invalid_argument("cgls: length mismatch");

  std::vector<double> z(nc, 0.0);
  std::vector<double> resid(r.begin(), r.end());  // r - A z
  std::vector<double> g(nc);                      // A^T resid
  A.adjoint(resid.data(), g.data());
  std::vector<double> p = g;
  std::vector<double> Ap(m);

  double gamma = kernels::norm2_sq(g.data(), nc);
  const double stop = tol * std::sqrt(gamma);
  int it = 0;
  for (; it < max_iters && std::sqrt(gamma) > stop; ++it) {
    A.forward(p.data(), Ap.data());
    const double denom = kernels::norm2_sq(Ap.data(), m);
    if (denom == 0.0) break;
    const double alpha = gamma / denom;
    kernels::axpy(alpha, p.data(), z.data(), nc);
    kernels::axpy(-alpha, Ap.data(), resid.data(), m);
    A.adjoint(resid.data(), g.data());
    const double gamma_new = kernels::norm2_sq(g.data(), nc);
    const double beta = gamma_new / gamma;
    gamma = gamma_new;
    if (std::sqrt(gamma) <= stop) {
      ++it;
      break;
    }
    kernels::axpby(1.0, g.data(), beta, p.data(), p.data(), nc);
  }
  if (iters_out != nullptr) *iters_out = it;
  return z;
}

struct RangeProjector::Impl {
  const SparseOperator* A = nullptr;
  RangeProjectionConfig cfg;
  bool dense = false;
  Eigen::MatrixXd basis;  // rows x rank, orthonormal columns
  int rank = -1;
};

RangeProjector::RangeProjector(const SparseOperator& A,
                               RangeProjectionConfig cfg)
    : impl_(std::make_unique<Impl>()) {
  impl_->A = &A;
  impl_->cfg = cfg;
  const std::int64_t entries =
      static_cast<std::int64_t>(A.rows()) * static_cast<std::int64_t>(A.cols());
  impl_->dense = entries <= cfg.dense_threshold;
  if (impl_->dense) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(to_dense(A), Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = sv.size() > 0 ? sv(0) * cfg.rank_rel_tol : 0.0;
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    impl_->rank = rank;
    impl_->basis = svd.matrixU().leftCols(rank);
  }
}

RangeProjector::~RangeProjector() = default;
RangeProjector::RangeProjector(RangeProjector&&) noexcept = default;
RangeProjector& RangeProjector::operator=(RangeProjector&&) noexcept = default;

void RangeProjector::apply(const double* r, double* out) const {
  const SparseOperator& A = *impl_->A;
  const std::size_t m = static_cast<std::size_t>(A.rows());
  if (impl_->dense) {
    Eigen::Map<const Eigen::VectorXd> rv(r, m);
    Eigen::Map<Eigen::VectorXd> ov(out, m);
    ov = impl_->basis * (impl_->basis.transpose() * rv);
    return;
  }
  const int cap = impl_->cfg.max_iters > 0
                      ? impl_->cfg.max_iters
                      : 2 * (A.rows() + A.cols()) + 200;
  int used = 0;
  std::vector<double> z =
      cgls_solve(A, std::span<const double>(r, m), cap, impl_->cfg.tol, &used);
  if (used >= cap) {
    throw std::runtime_error(
        "range projection did not converge within the iteration cap; "
        "operator appears ill-conditioned");
  }
  A.forward(z.data(), out);
}

std::vector<double> RangeProjector::apply(std::span<const double> r) const {
  if (static_cast<std::int32_t>(r.size()) != impl_->A->rows()) {
    throw std::invalid_argument("range projection: length mismatch");
  }
  std::vector<double> out(r.size());
  apply(r.data(), out.data());
  return out;
}

bool RangeProjector::dense_path() const { return impl_->dense; }
int RangeProjector::rank() const { return impl_->rank; }

std::vector<double> project_onto_range(const SparseOperator& A,
                                       std::span<const double> r,
                                       RangeProjectionConfig cfg) {
  return RangeProjector(A, cfg).apply(r);
}

bool probe_full_row_rank(const SparseOperator& A, double threshold, int probes,
                         std::uint64_t seed) {
  if (A.rows() > A.cols()) return false;  // row rank cannot exceed cols
  std::mt19937_64 eng(seed);
  const std::size_t m = static_cast<std::size_t>(A.rows());
  std::vector<double> r(m);
  std::vector<double> Az(m);
  const int cap = 4 * (A.rows() + A.cols()) + 200;
  for (int p = 0; p < probes; ++p) {
    for (double& v : r) {
      v = static_cast<double>(eng() >> 11) * 0x1p-53 * 2.0 - 1.0;
    }
    std::vector<double> z = cgls_solve(A, r, cap, 1e-14);
    A.forward(z.data(), Az.data());
    kernels::axpy(-1.0, r.data(), Az.data(), m);
    const double rel = std::sqrt(kernels::norm2_sq(Az.data(), m)) /
                       std::sqrt(kernels::norm2_sq(r.data(), m));
    if (rel > threshold) return false;
  }
  return true;
}

}  // namespace bintomo
