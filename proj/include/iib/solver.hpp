#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "iib/generators.hpp"
#include "iib/info.hpp"
#include "iib/simplex.hpp"
#include "iib/threads.hpp"

namespace iib {

enum class StepRule { MultiplicativeUpdate, ProjectedGradient };

// Experimental solver for intermediate constraint levels. Minimizes the
// Lagrangian objective - beta * constraint over column-stochastic kappa for a
// schedule of beta values and reports the iterate whose achieved constraint
// lands closest to the target. No optimality or convergence guarantee is
// claimed.
struct SolverConfig {
  Index bottleneck_size = 0;  // 0 selects |X| * |Y|
  std::vector<double> beta_schedule;  // empty selects the default ramp
  int restarts = 8;
  std::uint64_t seed = 0;
  int max_iters = 10000;
  double conv_tol = 1e-9;
  StepRule step_rule = StepRule::MultiplicativeUpdate;
  // restart tie-break: lowest objective among runs within this slack of the
  // best-achieved distance to the target
  double constraint_slack = 1e-4;
};

struct BetaDiagnostics {
  double beta = 0.0;
  int iters = 0;
  bool converged = false;
  double constraint = 0.0;
  double objective = 0.0;
  double lagrangian = 0.0;
};

struct RestartDiagnostics {
  int restart = 0;
  std::vector<BetaDiagnostics> betas;
};

struct SolveDiagnostics {
  std::vector<RestartDiagnostics> restarts;
  int chosen_restart = -1;
  double chosen_beta = 0.0;
  // Lagrangian monotonicity is tracked, not asserted.
  std::uint64_t monotone_checks = 0;
  std::uint64_t monotone_violations = 0;
};

struct IterativeSolution {
  Bottleneck<double> kappa;
  double constraint = 0.0;
  double objective = 0.0;
  bool converged = true;  // all chosen-beta iterations converged
  SolveDiagnostics diagnostics;
};

namespace detail {

inline std::vector<double> default_beta_schedule() {
  // fine ramp through the clustering transitions, then a coarse tail that
  // resolves nearly-merged ratio classes
  std::vector<double> betas;
  for (double b = 0.0625; b <= 4096.0 + 1e-9; b *= 1.4142135623730951) betas.push_back(b);
  for (double b = 8192.0; b <= 16777216.0 + 1e-9; b *= 2.0) betas.push_back(b);
  return betas;
}

struct RestartOutcome {
  RestartDiagnostics diag;
  std::vector<Eigen::MatrixXd> snapshots;  // kappa after each beta
  std::uint64_t monotone_checks = 0;
  std::uint64_t monotone_violations = 0;
};

// Measures on a raw kappa matrix against flattened joint (p) and product of
// marginals (pt).
inline double constraint_of(const Eigen::MatrixXd& kappa, const Eigen::VectorXd& p,
                            const Eigen::VectorXd& pt) {
  const Eigen::VectorXd q = kappa * p;
  const Eigen::VectorXd qt = kappa * pt;
  double pos = 0.0, neg = 0.0;
  for (Index t = 0; t < q.size(); ++t) {
    if (q(t) <= 0.0) continue;
    const double term = q(t) * std::log(q(t) / qt(t));
    (term >= 0.0 ? pos : neg) += term;
  }
  return pos + neg;
}

inline double objective_of(const Eigen::MatrixXd& kappa, const Eigen::VectorXd& p) {
  const Eigen::VectorXd q = kappa * p;
  double pos = 0.0, neg = 0.0;
  for (Index a = 0; a < p.size(); ++a) {
    if (p(a) <= 0.0) continue;
    for (Index t = 0; t < kappa.rows(); ++t) {
      if (kappa(t, a) <= 0.0) continue;
      const double term = p(a) * kappa(t, a) * std::log(kappa(t, a) / q(t));
      (term >= 0.0 ? pos : neg) += term;
    }
  }
  return pos + neg;
}

// Fixed-point reassignment derived from the stationarity condition of the
// Lagrangian: log-weights log q(t) + beta*log(q/qt) - beta*(pt(a)/p(a))*(q/qt),
// softmax-normalized per column.
inline int multiplicative_sweep(Eigen::MatrixXd& kappa, const Eigen::VectorXd& p,
                                const Eigen::VectorXd& pt, double beta, int max_iters,
                                double conv_tol, bool* converged,
                                std::uint64_t* mono_checks, std::uint64_t* mono_violations) {
  const Index nt = kappa.rows(), m = kappa.cols();
  double prev_l = std::numeric_limits<double>::infinity();
  int it = 0;
  *converged = false;
  for (; it < max_iters; ++it) {
    const Eigen::VectorXd q = kappa * p;
    const Eigen::VectorXd qt = kappa * pt;
    Eigen::VectorXd logw(nt);
    Eigen::MatrixXd next(nt, m);
    for (Index a = 0; a < m; ++a) {
      const double ratio_a = p(a) > 0.0 ? pt(a) / p(a) : 0.0;
      double best = -std::numeric_limits<double>::infinity();
      for (Index t = 0; t < nt; ++t) {
        if (q(t) <= 0.0 || qt(t) <= 0.0) {
          logw(t) = -std::numeric_limits<double>::infinity();
          continue;
        }
        const double lr = std::log(q(t) / qt(t));
        logw(t) = std::log(q(t)) + beta * lr - beta * ratio_a * (q(t) / qt(t));
        best = std::max(best, logw(t));
      }
      double total = 0.0;
      for (Index t = 0; t < nt; ++t) {
        const double w = std::isfinite(logw(t)) ? std::exp(logw(t) - best) : 0.0;
        next(t, a) = w;
        total += w;
      }
      next.col(a) /= total;
    }
    const double delta = (next - kappa).template lpNorm<Eigen::Infinity>();
    kappa = std::move(next);
    const double l = objective_of(kappa, p) - beta * constraint_of(kappa, p, pt);
    if (std::isfinite(prev_l)) {
      ++*mono_checks;
      if (l > prev_l + 1e-12) ++*mono_violations;
    }
    prev_l = l;
    if (delta < conv_tol) {
      *converged = true;
      ++it;
      break;
    }
  }
  return it;
}

// Plain projected gradient with halving line search on the Lagrangian.
inline int projected_gradient_sweep(Eigen::MatrixXd& kappa, const Eigen::VectorXd& p,
                                    const Eigen::VectorXd& pt, double beta, int max_iters,
                                    double conv_tol, bool* converged,
                                    std::uint64_t* mono_checks, std::uint64_t* mono_violations) {
  const Index nt = kappa.rows(), m = kappa.cols();
  auto lagrangian = [&](const Eigen::MatrixXd& k) {
    return objective_of(k, p) - beta * constraint_of(k, p, pt);
  };
  double current = lagrangian(kappa);
  int it = 0;
  *converged = false;
  const double floor_v = 1e-300;
  for (; it < max_iters; ++it) {
    const Eigen::VectorXd q = kappa * p;
    const Eigen::VectorXd qt = kappa * pt;
    Eigen::MatrixXd grad(nt, m);
    for (Index a = 0; a < m; ++a)
      for (Index t = 0; t < nt; ++t) {
        const double k = std::max(kappa(t, a), floor_v);
        const double qv = std::max(q(t), floor_v);
        const double qtv = std::max(qt(t), floor_v);
        grad(t, a) = p(a) * std::log(k / qv) -
                     beta * (p(a) * std::log(qv / qtv) + p(a) - pt(a) * qv / qtv);
      }
    double step = 1.0;
    Eigen::MatrixXd next(nt, m);
    double next_l = 0.0;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      for (Index a = 0; a < m; ++a)
        next.col(a) = project_to_simplex(kappa.col(a) - step * grad.col(a));
      next_l = lagrangian(next);
      if (next_l <= current + 1e-15) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    ++*mono_checks;
    if (!improved) {
      ++*mono_violations;
      *converged = true;  // no descent step available
      break;
    }
    const double delta = (next - kappa).template lpNorm<Eigen::Infinity>();
    kappa = std::move(next);
    current = next_l;
    if (delta < conv_tol) {
      *converged = true;
      ++it;
      break;
    }
  }
  return it;
}

inline Eigen::MatrixXd dirichlet_init(Index nt, Index m, std::mt19937_64& rng) {
  Eigen::MatrixXd kappa(nt, m);
  for (Index a = 0; a < m; ++a) {
    double total = 0.0;
    for (Index t = 0; t < nt; ++t) {
      const double e = -std::log(1.0 - unit_double(rng));
      kappa(t, a) = e;
      total += e;
    }
    kappa.col(a) /= total;
  }
  return kappa;
}

}  // namespace detail

inline IterativeSolution solve_iib_at(const Joint<double>& j, double lambda_target,
                                      const SolverConfig& cfg = {}) {
  if (cfg.bottleneck_size < 0 || cfg.max_iters < 1 || !(cfg.conv_tol > 0.0) || cfg.restarts < 1)
    throw InvalidConstruction("invalid solver configuration");
  for (double b : cfg.beta_schedule)
    if (!(b > 0.0)) throw InvalidConstruction("beta schedule entries must be positive");
  const double total = mutual_information(j).value;
  if (lambda_target < 0.0 || lambda_target > total + 1e-9)
    throw LambdaOutOfRange("lambda target outside [0, I(X;Y)]");

  const Index m = j.x_alphabet().size * j.y_alphabet().size;
  const Index nt = cfg.bottleneck_size > 0 ? cfg.bottleneck_size : m;
  const std::vector<double> betas =
      cfg.beta_schedule.empty() ? detail::default_beta_schedule() : cfg.beta_schedule;

  Eigen::VectorXd p(m), pt(m);
  {
    const auto pv = j.as_product_dist();
    const auto ptv = j.marginal_product_dist();
    for (Index a = 0; a < m; ++a) {
      p(a) = pv(a);
      pt(a) = ptv(a);
    }
  }

  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  parallel_for(cfg.restarts, [&](int r) {
    auto& out = outcomes[static_cast<std::size_t>(r)];
    out.diag.restart = r;
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    Eigen::MatrixXd kappa = detail::dirichlet_init(nt, m, rng);
    bool first_beta = true;
    for (double beta : betas) {
      // Annealing can park the iterate on the constant-column saddle (a fixed
      // point of the update) and can starve bottleneck symbols to exact zero,
      // which the multiplicative step cannot revive. A deterministic jitter
      // plus a vanishing mass floor at each stage start keeps both escapes open.
      if (!first_beta) {
        const double floor_w = 1e-12;
        for (Index a = 0; a < m; ++a) {
          for (Index t = 0; t < nt; ++t)
            kappa(t, a) = (1.0 - floor_w) * kappa(t, a) * (1.0 + 1e-8 * unit_double(rng)) +
                          floor_w / static_cast<double>(nt);
          kappa.col(a) /= kappa.col(a).sum();
        }
      }
      first_beta = false;

      // Two candidates per stage: the annealed iterate and a fresh draw. The
      // anneal tracks the transition smoothly; the fresh start escapes basins
      // where distinct ratio classes got fused onto one symbol.
      auto run_sweep = [&](Eigen::MatrixXd& k, bool* conv) {
        if (cfg.step_rule == StepRule::MultiplicativeUpdate)
          return detail::multiplicative_sweep(k, p, pt, beta, cfg.max_iters, cfg.conv_tol, conv,
                                              &out.monotone_checks, &out.monotone_violations);
        return detail::projected_gradient_sweep(k, p, pt, beta, cfg.max_iters, cfg.conv_tol, conv,
                                                &out.monotone_checks, &out.monotone_violations);
      };
      bool conv_warm = false, conv_fresh = false;
      const int iters_warm = run_sweep(kappa, &conv_warm);
      Eigen::MatrixXd fresh = detail::dirichlet_init(nt, m, rng);
      const int iters_fresh = run_sweep(fresh, &conv_fresh);

      const double l_warm = detail::objective_of(kappa, p) -
                            beta * detail::constraint_of(kappa, p, pt);
      const double l_fresh = detail::objective_of(fresh, p) -
                             beta * detail::constraint_of(fresh, p, pt);
      bool use_fresh = l_fresh < l_warm - 1e-15;
      if (use_fresh) kappa = std::move(fresh);

      BetaDiagnostics d;
      d.beta = beta;
      d.iters = use_fresh ? iters_fresh : iters_warm;
      d.converged = use_fresh ? conv_fresh : conv_warm;
      d.constraint = detail::constraint_of(kappa, p, pt);
      d.objective = detail::objective_of(kappa, p);
      d.lagrangian = d.objective - beta * d.constraint;
      out.diag.betas.push_back(d);
      out.snapshots.push_back(kappa);
    }
  });

  // Each restart reports its snapshot closest to the target; the final pick is
  // the lowest objective among restarts within the slack of the best distance.
  std::vector<std::size_t> restart_pick(static_cast<std::size_t>(cfg.restarts), 0);
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& ds = outcomes[static_cast<std::size_t>(r)].diag.betas;
    std::size_t best = 0;
    for (std::size_t b = 1; b < ds.size(); ++b) {
      const double db = std::abs(ds[b].constraint - lambda_target);
      const double dbest = std::abs(ds[best].constraint - lambda_target);
      if (db < dbest || (db == dbest && ds[b].objective < ds[best].objective)) best = b;
    }
    restart_pick[static_cast<std::size_t>(r)] = best;
  }
  double best_dist = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& d = outcomes[static_cast<std::size_t>(r)]
                        .diag.betas[restart_pick[static_cast<std::size_t>(r)]];
    best_dist = std::min(best_dist, std::abs(d.constraint - lambda_target));
  }
  int pick_r = -1;
  std::size_t pick_b = 0;
  double pick_obj = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    const std::size_t b = restart_pick[static_cast<std::size_t>(r)];
    const auto& d = outcomes[static_cast<std::size_t>(r)].diag.betas[b];
    if (std::abs(d.constraint - lambda_target) > best_dist + cfg.constraint_slack) continue;
    if (d.objective < pick_obj - 1e-15) {
      pick_obj = d.objective;
      pick_r = r;
      pick_b = b;
    }
  }

  IterativeSolution sol;
  const auto& chosen = outcomes[static_cast<std::size_t>(pick_r)];
  Alphabet in = Alphabet::of_size(m);
  Alphabet out_a = Alphabet::of_size(nt);
  sol.kappa = Bottleneck<double>::of(
      Channel<double>::from_matrix(in, out_a, chosen.snapshots[pick_b], true));
  sol.constraint = chosen.diag.betas[pick_b].constraint;
  sol.objective = chosen.diag.betas[pick_b].objective;
  sol.converged = chosen.diag.betas[pick_b].converged;
  for (auto& out : outcomes) {
    sol.diagnostics.monotone_checks += out.monotone_checks;
    sol.diagnostics.monotone_violations += out.monotone_violations;
    sol.diagnostics.restarts.push_back(std::move(out.diag));
  }
  sol.diagnostics.chosen_restart = pick_r;
  sol.diagnostics.chosen_beta = betas[pick_b];
  return sol;
}

struct ParetoPoint {
  double lambda_target = 0.0;
  double lambda_achieved = 0.0;
  double objective = 0.0;      // after monotone cleanup
  double objective_raw = 0.0;  // solver output before cleanup
};

// Sweeps the grid and reports a frontier with objectives non-decreasing in
// lambda (running maximum over the raw solver outputs).
inline std::vector<ParetoPoint> pareto_sweep(const Joint<double>& j,
                                             const std::vector<double>& grid,
                                             const SolverConfig& cfg = {}) {
  const double total = mutual_information(j).value;
  std::vector<ParetoPoint> points;
  for (double lambda : grid) {
    if (lambda < 0.0 || lambda > total + 1e-9)
      throw LambdaOutOfRange("pareto grid value outside [0, I(X;Y)]");
    IterativeSolution sol = solve_iib_at(j, lambda, cfg);
    ParetoPoint pt;
    pt.lambda_target = lambda;
    pt.lambda_achieved = sol.constraint;
    pt.objective_raw = sol.objective;
    points.push_back(pt);
  }
  std::sort(points.begin(), points.end(),
            [](const ParetoPoint& a, const ParetoPoint& b) {
              return a.lambda_achieved < b.lambda_achieved;
            });
  double running = -std::numeric_limits<double>::infinity();
  for (auto& pt : points) {
    running = std::max(running, pt.objective_raw);
    pt.objective = running;
  }
  return points;
}

}  // namespace iib
