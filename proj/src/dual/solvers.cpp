#include "bintomo/dual/solvers.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>

#include "bintomo/core/range_projection.hpp"
#include "bintomo/dual/objective.hpp"
#include "bintomo/dual/prox.hpp"
#include "bintomo/kernels/kernels.hpp"

namespace bintomo {
namespace {

DualSolution finish(const SparseOperator& Aeff, std::span<const double> yeff,
                    const GreyLevels& levels, const RangeProjector* proj,
                    const KktCertifier& cert, std::vector<double> mu,
                    int iterations, bool converged, double gap) {
  DualSolution sol;
  sol.mu = std::move(mu);
  sol.nu = Aeff.adjoint(std::span<const double>(sol.mu));
  std::vector<double> diff(yeff.size());
  kernels::axpby(1.0, sol.mu.data(), -1.0, yeff.data(), diff.data(),
                 diff.size());
  if (proj != nullptr) {
    std::vector<double> pd(diff.size());
    proj->apply(diff.data(), pd.data());
    diff.swap(pd);
  }
  const double quad = 0.5 * kernels::norm2_sq(diff.data(), diff.size());
  const double pen = asym_one_norm(sol.nu, levels);
  sol.objective = quad + pen;
  sol.g1 = 0.5 * kernels::norm2_sq(yeff.data(), yeff.size()) - quad;
  sol.g2 = -pen;
  sol.kkt_residual = cert.residual(sol.mu, sol.nu);
  sol.gap = gap;
  sol.iterations = iterations;
  sol.converged = converged;
  return sol;
}

}  // namespace

DualSolution solve_dual_primal_dual(const SparseOperator& A,
                                    std::span<const double> y,
                                    const GreyLevels& levels,
                                    std::span<const double> weights,
                                    const SolverConfig& cfg) {
  EffectiveProblem eff = make_effective(A, y, weights);
  const std::size_t m = eff.y.size();
  const std::size_t n = static_cast<std::size_t>(eff.A.cols());

  const double norm_est = eff.A.norm_estimate(cfg.power_iters, cfg.seed);
  if (norm_est == 0.0) {
    // Zero operator: the projected quadratic vanishes and p(0) = 0, so the
    // data vector itself is optimal.
    KktCertifier cert(eff.A, eff.y, levels, nullptr, cfg.zero_threshold);
    return finish(eff.A, eff.y, levels, nullptr, cert,
                  std::vector<double>(eff.y.begin(), eff.y.end()), 0, true,
                  0.0);
  }
  const double scale = norm_est * 1.01;  // margin over the power estimate
  const SparseOperator Ah = eff.A.scaled(1.0 / scale);
  std::vector<double> yh(m);
  for (std::size_t i = 0; i < m; ++i) yh[i] = eff.y[i] / scale;

  const bool full_row_rank =
      eff.A.rows() <= eff.A.cols() && probe_full_row_rank(eff.A);
  std::optional<RangeProjector> projector;
  if (!full_row_rank) {
    RangeProjectionConfig pcfg;
    pcfg.dense_threshold = cfg.dense_threshold;
    projector.emplace(eff.A, pcfg);
  }
  const RangeProjector* proj = projector ? &*projector : nullptr;
  KktCertifier cert(eff.A, eff.y, levels, proj, cfg.zero_threshold);

  const double lo = -std::abs(levels.u0);
  const double hi = std::abs(levels.u1);
  const double tau = 1.0;
  const double sigma = 1.0;

  // Degenerate instances put the exact optimum at nu = 0 with the
  // subgradient pinned to a box corner; the sign information then lives only
  // in how iterates approach zero. Shrinking the penalty box by a whisker
  // moves those solutions a fixed small distance off zero (an interior-path
  // tie-break) without disturbing the exact-problem certificate, which keeps
  // a floor of eta * (row mass) << tol_kkt.
  double row_mass = 0.0;
  {
    const auto& rp = eff.A.row_ptr();
    for (std::int32_t r = 0; r < eff.A.rows(); ++r) {
      double acc = 0.0;
      for (std::int32_t k = rp[r]; k < rp[r + 1]; ++k) {
        acc += std::abs(eff.A.values()[k]);
      }
      row_mass = std::max(row_mass, acc);
    }
  }
  const double level_mag = std::max(std::abs(levels.u0), std::abs(levels.u1));
  const double eta = std::min(
      1e-7, 0.2 * cfg.tol_kkt / std::max(1.0, row_mass * level_mag));
  const double lo_inner = lo * (1.0 - eta);
  const double hi_inner = hi * (1.0 - eta);

  std::vector<double> mu(m, 0.0);
  std::vector<double> mu_bar(m, 0.0);
  std::vector<double> w(n, 0.0);
  std::vector<double> nu_h(n);
  std::vector<double> Aw(m);
  std::vector<double> v(m);
  std::vector<double> prox_in(m);
  std::vector<double> prox_p(m);
  std::vector<double> mu_full(m);
  std::vector<double> nu_full(n);

  double yh_max = 0.0;
  for (double v : yh) yh_max = std::max(yh_max, std::abs(v));
  const double fp_tol = 1e-12 * (1.0 + yh_max);

  double best_kkt = std::numeric_limits<double>::infinity();
  std::vector<double> best_mu = mu;
  double best_gap = std::numeric_limits<double>::infinity();
  bool converged = false;
  int it = 0;

  for (it = 1; it <= cfg.max_iters; ++it) {
    // w <- clamp(w + sigma * A^T mu_bar)
    Ah.adjoint(mu_bar.data(), nu_h.data());
    kernels::axpy(sigma, nu_h.data(), w.data(), n);
    kernels::clamp(w.data(), lo_inner, hi_inner, w.data(), n);

    // mu <- prox_{tau g}(mu - tau * A w)
    Ah.forward(w.data(), Aw.data());
    kernels::axpby(1.0, mu.data(), -tau, Aw.data(), v.data(), m);
    // (v + tau*yh) / (1 + tau), range-projected against v in the deficient
    // case so the orthogonal component of mu stays untouched
    kernels::axpby(1.0 / (1.0 + tau), v.data(), tau / (1.0 + tau), yh.data(),
                   prox_in.data(), m);
    if (proj != nullptr) {
      kernels::axpby(1.0, prox_in.data(), -1.0, v.data(), prox_p.data(), m);
      projector->apply(prox_p.data(), prox_in.data());
      kernels::axpby(1.0, v.data(), 1.0, prox_in.data(), prox_in.data(), m);
    }
    // mu_bar = 2*mu_new - mu_old
    kernels::axpby(2.0, prox_in.data(), -1.0, mu.data(), mu_bar.data(), m);
    mu.swap(prox_in);
    double fixed_point = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      fixed_point = std::max(fixed_point, std::abs(mu[i] - prox_in[i]));
    }

    if (it % cfg.check_every == 0 || it == cfg.max_iters) {
      for (std::size_t i = 0; i < m; ++i) mu_full[i] = scale * mu[i];
      eff.A.adjoint(mu_full.data(), nu_full.data());
      const double kkt = cert.residual(mu_full, nu_full);

      std::vector<double> diff(m);
      kernels::axpby(1.0, mu_full.data(), -1.0, eff.y.data(), diff.data(), m);
      if (proj != nullptr) {
        std::vector<double> pd(m);
        projector->apply(diff.data(), pd.data());
        diff.swap(pd);
      }
      const double objective =
          0.5 * kernels::norm2_sq(diff.data(), m) + asym_one_norm(nu_full, levels);
      const double gap = objective - dual_lower_bound(eff.A, eff.y, w);

      if (kkt < best_kkt) {
        best_kkt = kkt;
        best_mu = mu;
        best_gap = gap;
      }
      // The fixed-point term guarantees the components converging to an
      // exact zero have actually fallen under the recovery threshold.
      if (kkt <= cfg.tol_kkt &&
          gap <= cfg.tol_kkt * (1.0 + std::abs(objective)) &&
          fixed_point <= fp_tol) {
        converged = true;
        best_mu = mu;
        best_gap = gap;
        break;
      }
    }
  }

  std::vector<double> mu_out(m);
  for (std::size_t i = 0; i < m; ++i) mu_out[i] = scale * best_mu[i];
  return finish(eff.A, eff.y, levels, proj, cert, std::move(mu_out),
                std::min(it, cfg.max_iters), converged, best_gap);
}

DualSolution solve_dual_smoothed(const SparseOperator& A,
                                 std::span<const double> y,
                                 const GreyLevels& levels,
                                 std::span<const double> weights,
                                 const SolverConfig& cfg) {
  if (!(cfg.smoothing_epsilon > 0.0)) {
    throw std::invalid_argument("smoothing epsilon must be positive");
  }
  EffectiveProblem eff = make_effective(A, y, weights);
  const std::size_t m = eff.y.size();
  const std::size_t n = static_cast<std::size_t>(eff.A.cols());

  const double norm_est = eff.A.norm_estimate(cfg.power_iters, cfg.seed);
  const double scale = norm_est > 0.0 ? norm_est : 1.0;
  const SparseOperator Ah = eff.A.scaled(1.0 / scale);
  std::vector<double> yh(m);
  for (std::size_t i = 0; i < m; ++i) yh[i] = eff.y[i] / scale;
  // Rescaling mu by the operator norm turns eps into eps/scale^4 and leaves
  // the minimizer (after undoing the scale) unchanged.
  const double eps_h = cfg.smoothing_epsilon / (scale * scale * scale * scale);

  std::vector<double> nu(n);
  std::vector<double> slope(n);

  auto eval = [&](const std::vector<double>& mu, std::vector<double>& grad) {
    Ah.adjoint(mu.data(), nu.data());
    double f = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = mu[i] - yh[i];
      f += 0.5 * d * d;
      grad[i] = d;
    }
    if (cfg.penalty_weight != 0.0) {
      f += cfg.penalty_weight * smoothed_penalty_value(nu, eps_h, levels);
      smoothed_penalty_slope(nu.data(), n, eps_h, levels, slope.data());
      std::vector<double> as(m);
      Ah.forward(slope.data(), as.data());
      kernels::axpy(cfg.penalty_weight, as.data(), grad.data(), m);
    }
    return f;
  };

  std::vector<double> mu(m, 0.0);
  std::vector<double> grad(m);
  double f = eval(mu, grad);
  const double gtol = cfg.tol_kkt * (1.0 + std::sqrt(kernels::norm2_sq(
                                             yh.data(), m)));

  std::deque<std::vector<double>> s_hist;
  std::deque<std::vector<double>> y_hist;
  std::deque<double> rho_hist;
  std::vector<double> q(m);
  std::vector<double> mu_new(m);
  std::vector<double> grad_new(m);
  bool converged = false;
  int it = 0;

  for (it = 0; it < cfg.max_iters; ++it) {
    const double gnorm = std::sqrt(kernels::norm2_sq(grad.data(), m));
    if (gnorm <= gtol) {
      converged = true;
      break;
    }

    // two-loop recursion
    q = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t h = s_hist.size(); h-- > 0;) {
      alpha[h] = rho_hist[h] * kernels::dot(s_hist[h].data(), q.data(), m);
      kernels::axpy(-alpha[h], y_hist[h].data(), q.data(), m);
    }
    if (!s_hist.empty()) {
      const auto& sb = s_hist.back();
      const auto& yb = y_hist.back();
      const double gamma = kernels::dot(sb.data(), yb.data(), m) /
                           kernels::norm2_sq(yb.data(), m);
      for (double& v : q) v *= gamma;
    }
    for (std::size_t h = 0; h < s_hist.size(); ++h) {
      const double beta =
          rho_hist[h] * kernels::dot(y_hist[h].data(), q.data(), m);
      kernels::axpy(alpha[h] - beta, s_hist[h].data(), q.data(), m);
    }
    for (double& v : q) v = -v;  // descent direction

    double dir_deriv = kernels::dot(grad.data(), q.data(), m);
    if (dir_deriv >= 0.0) {  // not a descent direction; restart from gradient
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < m; ++i) q[i] = -grad[i];
      dir_deriv = -kernels::norm2_sq(grad.data(), m);
    }

    // Armijo backtracking
    double step = 1.0;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      kernels::axpby(1.0, mu.data(), step, q.data(), mu_new.data(), m);
      f_new = eval(mu_new, grad_new);
      if (f_new <= f + 1e-4 * step * dir_deriv) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> s_vec(m);
    std::vector<double> y_vec(m);
    kernels::axpby(1.0, mu_new.data(), -1.0, mu.data(), s_vec.data(), m);
    kernels::axpby(1.0, grad_new.data(), -1.0, grad.data(), y_vec.data(), m);
    const double sy = kernels::dot(s_vec.data(), y_vec.data(), m);
    if (sy > 1e-16 * kernels::norm2_sq(y_vec.data(), m)) {
      s_hist.push_back(std::move(s_vec));
      y_hist.push_back(std::move(y_vec));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > cfg.lbfgs_memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    mu.swap(mu_new);
    grad.swap(grad_new);
    f = f_new;
  }

  DualSolution sol;
  sol.mu.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.mu[i] = scale * mu[i];
  sol.nu = eff.A.adjoint(std::span<const double>(sol.mu));
  std::vector<double> diff(m);
  kernels::axpby(1.0, sol.mu.data(), -1.0, eff.y.data(), diff.data(), m);
  const double quad = 0.5 * kernels::norm2_sq(diff.data(), m);
  const double pen = asym_one_norm(sol.nu, levels);
  sol.objective = quad + pen;
  sol.g1 = 0.5 * kernels::norm2_sq(eff.y.data(), m) - quad;
  sol.g2 = -pen;
  // Stationarity measure of the smoothed objective in original units,
  // recomputable via grad_smoothed_objective.
  {
    std::vector<double> g =
        grad_smoothed_objective(A, y, sol.mu, cfg.smoothing_epsilon, levels,
                                weights);
    if (cfg.penalty_weight != 1.0) {
      // fold the configured weight into the recomputation
      std::vector<double> nu_w = eff.A.adjoint(std::span<const double>(sol.mu));
      std::vector<double> sl(n);
      smoothed_penalty_slope(nu_w.data(), n, cfg.smoothing_epsilon, levels,
                             sl.data());
      std::vector<double> as(m);
      eff.A.forward(sl.data(), as.data());
      for (std::size_t i = 0; i < m; ++i) {
        g[i] = (sol.mu[i] - eff.y[i]) + cfg.penalty_weight * as[i];
      }
    }
    sol.kkt_residual = std::sqrt(kernels::norm2_sq(g.data(), m));
  }
  sol.gap = std::numeric_limits<double>::quiet_NaN();  // smooth surrogate
  sol.iterations = it;
  sol.converged = converged;
  return sol;
}

DualSolution prox_gradient_invertible(const SparseOperator& A,
                                      std::span<const double> y,
                                      const SolverConfig& cfg) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("prox_gradient_invertible requires square A");
  }
  const std::size_t n = static_cast<std::size_t>(A.cols());
  if (y.size() != n) throw std::invalid_argument("data length mismatch");

  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(A.rows(), A.cols());
  {
    const auto& rp = A.row_ptr();
    const auto& ci = A.col_idx();
    const auto& v = A.values();
    for (std::int32_t r = 0; r < A.rows(); ++r) {
      for (std::int32_t k = rp[r]; k < rp[r + 1]; ++k) dense(r, ci[k]) = v[k];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      dense, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > smax * 1e-10)) {
    throw std::invalid_argument("operator is numerically singular");
  }
  const double lipschitz = 1.0 / (smin * smin);  // ||A^{-1}||_2^2
  const double step = 1.0 / lipschitz;

  Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  const Eigen::VectorXd aty = dense.transpose() * yv;
  // (A^T A)^{-1} = V diag(1/s^2) V^T
  const Eigen::MatrixXd gram_inv =
      svd.matrixV() * sv.array().square().inverse().matrix().asDiagonal() *
      svd.matrixV().transpose();

  KktCertifier cert(A, y, GreyLevels::symmetric(), nullptr,
                    cfg.zero_threshold);

  Eigen::VectorXd nu = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad(n);
  Eigen::VectorXd next(n);
  std::vector<double> mu(n);
  std::vector<double> nu_chk(n);
  bool converged = false;
  int it = 0;

  auto recover_mu = [&](const Eigen::VectorXd& v, std::vector<double>& out) {
    // mu solves A^T mu = nu
    Eigen::VectorXd m =
        svd.matrixU() * (svd.matrixV().transpose() * v).cwiseQuotient(sv);
    Eigen::VectorXd::Map(out.data(), n) = m;
  };

  for (it = 1; it <= cfg.max_iters; ++it) {
    grad = gram_inv * (nu - aty);
    next = nu - step * grad;
    kernels::soft_threshold(next.data(), step, next.data(), n);
    const double change = (next - nu).lpNorm<Eigen::Infinity>();
    nu = next;
    if (it % cfg.check_every == 0 || it == cfg.max_iters ||
        change == 0.0) {
      recover_mu(nu, mu);
      A.adjoint(mu.data(), nu_chk.data());
      if (cert.residual(mu, nu_chk) <= cfg.tol_kkt) {
        converged = true;
        break;
      }
      if (change == 0.0) break;
    }
  }

  recover_mu(nu, mu);
  return finish(A, std::vector<double>(y.begin(), y.end()),
                GreyLevels::symmetric(), nullptr, cert, std::move(mu),
                std::min(it, cfg.max_iters), converged,
                std::numeric_limits<double>::quiet_NaN());
}

}  // namespace bintomo
