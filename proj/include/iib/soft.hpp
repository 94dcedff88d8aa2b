#pragma once

#include <random>
#include <utility>
#include <vector>

#include "iib/equivariance.hpp"
#include "iib/generators.hpp"
#include "iib/simplex.hpp"
#include "iib/solver.hpp"
#include "iib/threads.hpp"

namespace iib {

// Pair of stochastic self-maps of X and Y. Deterministic permutation pairs are
// the exact special case.
template <typename S>
struct SoftPair {
  Channel<S> mu;   // X -> X
  Channel<S> eta;  // Y -> Y

  static SoftPair identity(const Alphabet& x, const Alphabet& y) {
    return {Channel<S>::identity(x), Channel<S>::identity(y)};
  }
  static SoftPair from_permutations(const Permutation& sigma, const Permutation& tau) {
    return {permutation_channel<S>(sigma), permutation_channel<S>(tau)};
  }
  static SoftPair from_pair(const EquivariancePair& p) {
    return from_permutations(p.sigma, p.tau);
  }

  SoftPair<double> to_float() const { return {mu.to_float(), eta.to_float()}; }
};

// kappa o (mu x eta) == kappa, entrywise within tol (exactly in Exact mode).
template <typename S>
bool is_soft_equivariance(const Bottleneck<S>& kappa, const SoftPair<S>& pair, double tol = 1e-9) {
  const Channel<S> lhs = compose(kappa.base, tensor_product(pair.mu, pair.eta));
  for (Index a = 0; a < kappa.base.input().size; ++a)
    for (Index t = 0; t < kappa.base.output().size; ++t)
      if (!approx_equal(lhs(t, a), kappa.base(t, a), tol)) return false;
  return true;
}

// Residual of the equivalent operator condition im(mu x eta - e) <= ker(kappa):
// the max-norm of kappa * (mu x eta - e) over the standard basis.
template <typename S>
S exact_kernel_residual_value(const Bottleneck<S>& kappa, const SoftPair<S>& pair) {
  const Channel<S> prod = tensor_product(pair.mu, pair.eta);
  MatX<S> diff = prod.matrix() - MatX<S>::Identity(prod.matrix().rows(), prod.matrix().cols());
  MatX<S> r = kappa.base.matrix() * diff;
  S worst = S(0);
  for (Index i = 0; i < r.rows(); ++i)
    for (Index j = 0; j < r.cols(); ++j) worst = std::max(worst, abs_value(r(i, j)));
  return worst;
}

template <typename S>
double kernel_residual(const Bottleneck<S>& kappa, const SoftPair<S>& pair) {
  return to_double(exact_kernel_residual_value(kappa, pair));
}

template <typename S>
SoftPair<S> compose_pairs(const SoftPair<S>& a, const SoftPair<S>& b) {
  return {compose(a.mu, b.mu), compose(a.eta, b.eta)};
}

struct SoftSearchConfig {
  int seeds = 32;
  int max_alt_iters = 200;
  double residual_tol = 1e-8;
  double dedupe_tol = 1e-6;
  std::uint64_t seed = 0;
};

namespace detail {

inline Channel<double> random_stochastic(const Alphabet& a, std::mt19937_64& rng) {
  MatX<double> m(a.size, a.size);
  for (Index c = 0; c < a.size; ++c) {
    double total = 0.0;
    for (Index r = 0; r < a.size; ++r) {
      // exponential draws give Dirichlet(1) columns
      const double e = -std::log(1.0 - unit_double(rng));
      m(r, c) = e;
      total += e;
    }
    m.col(c) /= total;
  }
  return Channel<double>::from_matrix(a, a, std::move(m), true);
}

inline double pair_distance(const SoftPair<double>& a, const SoftPair<double>& b) {
  const double dm = (a.mu.matrix() - b.mu.matrix()).template lpNorm<Eigen::Infinity>();
  const double de = (a.eta.matrix() - b.eta.matrix()).template lpNorm<Eigen::Infinity>();
  return std::max(dm, de);
}

// One alternating pass: with eta fixed, each column of mu solves an
// independent simplex-constrained least-squares problem (and symmetrically).
inline void alternating_descend(const Bottleneck<double>& kappa, Channel<double>& mu,
                                Channel<double>& eta, int max_alt_iters) {
  const Index nx = mu.input().size, ny = eta.input().size;
  const Index nt = kappa.base.output().size;
  const auto& k = kappa.base.matrix();

  auto mu_step = [&]() {
    // A[(t,y), x'] = sum_y' kappa(t | x',y') eta(y'|y); same for every column.
    Eigen::MatrixXd a(nt * ny, nx);
    for (Index xp = 0; xp < nx; ++xp)
      for (Index y = 0; y < ny; ++y)
        for (Index t = 0; t < nt; ++t) {
          double v = 0.0;
          for (Index yp = 0; yp < ny; ++yp) v += k(t, pair_index(xp, yp, ny)) * eta(yp, y);
          a(t * ny + y, xp) = v;
        }
    MatX<double> m = mu.matrix();
    for (Index x = 0; x < nx; ++x) {
      Eigen::VectorXd target(nt * ny);
      for (Index y = 0; y < ny; ++y)
        for (Index t = 0; t < nt; ++t) target(t * ny + y) = k(t, pair_index(x, y, ny));
      m.col(x) = simplex_least_squares(a, target, m.col(x));
    }
    mu = Channel<double>::from_matrix(mu.input(), mu.output(), std::move(m), true);
  };
  auto eta_step = [&]() {
    Eigen::MatrixXd a(nt * nx, ny);
    for (Index yp = 0; yp < ny; ++yp)
      for (Index x = 0; x < nx; ++x)
        for (Index t = 0; t < nt; ++t) {
          double v = 0.0;
          for (Index xp = 0; xp < nx; ++xp) v += k(t, pair_index(xp, yp, ny)) * mu(xp, x);
          a(t * nx + x, yp) = v;
        }
    MatX<double> m = eta.matrix();
    for (Index y = 0; y < ny; ++y) {
      Eigen::VectorXd target(nt * nx);
      for (Index x = 0; x < nx; ++x)
        for (Index t = 0; t < nt; ++t) target(t * nx + x) = k(t, pair_index(x, y, ny));
      m.col(y) = simplex_least_squares(a, target, m.col(y));
    }
    eta = Channel<double>::from_matrix(eta.input(), eta.output(), std::move(m), true);
  };

  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_alt_iters; ++it) {
    mu_step();
    eta_step();
    const double res = kernel_residual(kappa, SoftPair<double>{mu, eta});
    if (prev - res < 1e-13) break;
    prev = res;
  }
}

}  // namespace detail

// Heuristic local search for pairs satisfying the soft condition: alternating
// simplex-constrained least squares from random starts, verified against
// cfg.residual_tol, deduplicated, identity always included. The search is not
// complete; an empty result beyond the identity is a valid outcome.
inline std::vector<SoftPair<double>> search_soft_equivariances(const Bottleneck<double>& kappa,
                                                               const Alphabet& x,
                                                               const Alphabet& y,
                                                               const SoftSearchConfig& cfg = {}) {
  if (kappa.base.input().size != x.size * y.size)
    throw DimensionMismatch("search_soft_equivariances: kappa input is not X x Y");
  if (cfg.seeds < 1 || cfg.max_alt_iters < 1 || !(cfg.residual_tol > 0.0) ||
      !(cfg.dedupe_tol > 0.0))
    throw InvalidConstruction("invalid soft search configuration");

  std::vector<std::optional<SoftPair<double>>> found(static_cast<std::size_t>(cfg.seeds));
  parallel_for(cfg.seeds, [&](int s) {
    std::mt19937_64 rng(derive_seed(cfg.seed, 100 + static_cast<std::uint64_t>(s)));
    Channel<double> mu = detail::random_stochastic(x, rng);
    Channel<double> eta = detail::random_stochastic(y, rng);
    detail::alternating_descend(kappa, mu, eta, cfg.max_alt_iters);
    SoftPair<double> pair{std::move(mu), std::move(eta)};
    if (kernel_residual(kappa, pair) <= cfg.residual_tol)
      found[static_cast<std::size_t>(s)] = std::move(pair);
  });

  std::vector<SoftPair<double>> out;
  out.push_back(SoftPair<double>::identity(x, y));
  for (auto& cand : found) {
    if (!cand) continue;
    bool dup = false;
    for (const auto& kept : out)
      if (detail::pair_distance(*cand, kept) <= cfg.dedupe_tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(*cand));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Retention experiment: perturb a channel, re-solve the bottleneck across a
// grid of constraint levels, and track the residual of each original exact
// pair against each solution.

struct PerturbationConfig {
  std::vector<double> lambda_fractions = {0.25, 0.5, 0.75, 1.0};  // of I(X;Y)
  SolverConfig solver;
  PartitionConfig partition;
  GroupSearchConfig search;
};

struct PerturbationReport {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::vector<EquivariancePair> base_group;  // exact group of the unperturbed channel
  std::vector<double> lambda_achieved;       // one per grid point
  // residuals[pair][grid point]; the top grid point uses the closed-form
  // solution, lower ones the iterative solver
  std::vector<std::vector<double>> residuals;
  double mutual_information = 0.0;
};

inline PerturbationReport perturbation_study(const Channel<double>& ch, double epsilon,
                                             std::uint64_t seed,
                                             const PerturbationConfig& cfg = {}) {
  PerturbationReport rep;
  rep.epsilon = epsilon;
  rep.seed = seed;
  rep.base_group = enumerate_group(ch, cfg.search).pairs;

  const Channel<double> noisy = epsilon > 0.0 ? perturb(ch, epsilon, seed) : ch;
  auto p = find_uniformizing_input(noisy);
  if (!p) throw NoUniformizingInput();
  const Joint<double> j = Joint<double>::from_input_and_channel(*p, noisy);
  if (!j.fully_supported()) throw JointNotFullySupported();

  const double total = mutual_information(j).value;
  rep.mutual_information = total;
  rep.residuals.assign(rep.base_group.size(), {});

  for (double frac : cfg.lambda_fractions) {
    Bottleneck<double> kappa;
    if (frac >= 1.0) {
      kappa = solve_iib_max(j, cfg.partition).kappa;
    } else {
      SolverConfig sc = cfg.solver;
      sc.seed = derive_seed(seed, 7000 + static_cast<std::uint64_t>(frac * 1000.0));
      kappa = solve_iib_at(j, frac * total, sc).kappa;
    }
    rep.lambda_achieved.push_back(iib_constraint(kappa, j).value);
    for (std::size_t g = 0; g < rep.base_group.size(); ++g)
      rep.residuals[g].push_back(
          kernel_residual(kappa, SoftPair<double>::from_pair(rep.base_group[g])));
  }
  return rep;
}

}  // namespace iib
