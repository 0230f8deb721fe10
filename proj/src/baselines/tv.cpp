#include "bintomo/baselines/tv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bintomo/kernels/kernels.hpp"

namespace bintomo {

SparseOperator build_gradient_operator(int n) {
  if (n < 1) throw std::invalid_argument("grid requires n >= 1");
  const std::int32_t cells = n * n;
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(4) * cells);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const std::int32_t i = r * n + c;
      if (c < n - 1) {
        entries.push_back({i, i, -1.0});
        entries.push_back({i, i + 1, 1.0});
      }
      if (r < n - 1) {
        entries.push_back({cells + i, i, -1.0});
        entries.push_back({cells + i, i + n, 1.0});
      }
    }
  }
  return SparseOperator::from_triplets(2 * cells, cells, std::move(entries));
}

TvResult solve_tv(const SparseOperator& A, std::span<const double> y,
                  const SparseOperator& D, const TvConfig& cfg) {
  if (cfg.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (static_cast<std::int32_t>(y.size()) != A.rows()) {
    throw std::invalid_argument("data length does not match operator rows");
  }
  if (D.cols() != A.cols()) {
    throw std::invalid_argument("gradient operator column mismatch");
  }
  const std::size_t m = y.size();
  const std::size_t n = static_cast<std::size_t>(A.cols());
  const std::size_t md = static_cast<std::size_t>(D.rows());

  const double a_norm = A.norm_estimate(cfg.power_iters, cfg.seed);
  const double d_norm = D.norm_estimate(cfg.power_iters, cfg.seed + 1);
  if (a_norm == 0.0) throw std::invalid_argument("zero operator");
  const SparseOperator Ah = A.scaled(1.0 / a_norm);
  const SparseOperator Dh = d_norm > 0.0 ? D.scaled(1.0 / d_norm) : D;
  std::vector<double> yh(m);
  for (std::size_t i = 0; i < m; ++i) yh[i] = y[i] / a_norm;

  // f1(u) = (a^2/2)||u - yh||^2 on u = Ah x; f2(v) = lambda*d*||v||_1 on
  // v = Dh x. Both normalized operators have unit norm, so ||K||^2 <= 2.
  const double a_sq = a_norm * a_norm;
  const double bound = cfg.lambda * d_norm;
  const double step = 1.0 / (std::sqrt(2.0) * 1.02);
  const double tau = step;
  const double sigma = step;

  std::vector<double> x(n, 0.0);
  std::vector<double> x_bar(n, 0.0);
  std::vector<double> w1(m, 0.0);
  std::vector<double> w2(md, 0.0);
  std::vector<double> ax(m);
  std::vector<double> dx(md);
  std::vector<double> kt(n);
  std::vector<double> kt2(n);
  std::vector<double> x_new(n);

  TvResult result;
  result.image.assign(n, 0.0);
  double best_obj = std::numeric_limits<double>::infinity();
  bool converged = false;
  int it = 0;

  std::vector<double> resid(m);
  std::vector<double> dgrad(md);

  for (it = 1; it <= cfg.max_iters; ++it) {
    // dual updates
    Ah.forward(x_bar.data(), ax.data());
    for (std::size_t i = 0; i < m; ++i) {
      w1[i] = (w1[i] + sigma * (ax[i] - yh[i])) / (1.0 + sigma / a_sq);
    }
    Dh.forward(x_bar.data(), dx.data());
    kernels::axpy(sigma, dx.data(), w2.data(), md);
    kernels::clamp(w2.data(), -bound, bound, w2.data(), md);

    // primal update
    Ah.adjoint(w1.data(), kt.data());
    Dh.adjoint(w2.data(), kt2.data());
    kernels::axpy(1.0, kt2.data(), kt.data(), n);
    kernels::axpby(1.0, x.data(), -tau, kt.data(), x_new.data(), n);
    if (cfg.nonneg) {
      kernels::clamp(x_new.data(), 0.0,
                     std::numeric_limits<double>::infinity(), x_new.data(), n);
    }
    kernels::axpby(2.0, x_new.data(), -1.0, x.data(), x_bar.data(), n);
    x.swap(x_new);

    if (it % cfg.check_every == 0 || it == cfg.max_iters) {
      // objective in original units
      A.forward(x.data(), resid.data());
      kernels::axpy(-1.0, y.data(), resid.data(), m);
      D.forward(x.data(), dgrad.data());
      double l1 = 0.0;
      for (double v : dgrad) l1 += std::abs(v);
      const double obj = 0.5 * kernels::norm2_sq(resid.data(), m) +
                         cfg.lambda * l1;
      if (obj < best_obj) {
        best_obj = obj;
        result.image = x;
      }
      result.objective_checkpoints.push_back(best_obj);

      // dual lower bound with box-truncated constraint term
      Ah.adjoint(w1.data(), kt.data());
      Dh.adjoint(w2.data(), kt2.data());
      kernels::axpy(1.0, kt2.data(), kt.data(), n);
      double xmax = 0.0;
      for (double v : x) xmax = std::max(xmax, std::abs(v));
      const double beta = std::max(1.0, 2.0 * xmax);
      double violation = 0.0;
      for (double v : kt) {
        violation += cfg.nonneg ? std::max(-v, 0.0) : std::abs(v);
      }
      double f1_conj = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        f1_conj += w1[i] * yh[i] + w1[i] * w1[i] / (2.0 * a_sq);
      }
      const double lower = -f1_conj - beta * violation;
      const double gap = (best_obj - lower) / std::max(1.0, std::abs(best_obj));
      result.final_gap = gap;
      if (gap <= cfg.tol_gap) {
        converged = true;
        break;
      }
    }
  }
  result.iterations = std::min(it, cfg.max_iters);
  result.converged = converged;
  return result;
}

double select_lambda_discrepancy(const SparseOperator& A,
                                 std::span<const double> y,
                                 double noise_level,
                                 std::span<const double> lambda_grid,
                                 const TvConfig& base) {
  if (lambda_grid.empty()) throw std::invalid_argument("empty lambda grid");
  if (noise_level < 0.0) throw std::invalid_argument("negative noise level");
  std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
  std::sort(grid.begin(), grid.end());
  if (noise_level == 0.0) return grid.front();

  const int n = static_cast<int>(std::lround(std::sqrt(A.cols())));
  const SparseOperator D = build_gradient_operator(n);
  std::vector<double> resid(y.size());
  for (std::size_t k = grid.size(); k-- > 0;) {
    TvConfig cfg = base;
    cfg.lambda = grid[k];
    TvResult r = solve_tv(A, y, D, cfg);
    A.forward(r.image.data(), resid.data());
    kernels::axpy(-1.0, y.data(), resid.data(), resid.size());
    const double misfit = std::sqrt(kernels::norm2_sq(resid.data(), resid.size()));
    if (misfit <= 1.05 * noise_level) return grid[k];
  }
  return grid.front();
}

}  // namespace bintomo
