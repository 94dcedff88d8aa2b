#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "iib/partition.hpp"

namespace iib {

struct GroupSearchConfig {
  double tol = 1e-9;                       // Float-mode entry comparison
  std::uint64_t max_nodes = 10'000'000;    // backtracking budget
  bool force_exhaustive = false;
  std::uint64_t exhaustive_limit = 1'000'000;  // fall back only when |X|!*|Y|! fits
};

namespace detail {

template <typename S>
struct EntryEq {
  double tol;
  bool operator()(const S& a, const S& b) const { return approx_equal(a, b, tol); }
};

// Backtracking search for all bijection pairs (sigma over columns, tau over
// rows) with m(tau(y), sigma(x)) == m(y, x) for every cell.
//
// Pruning: sigma may map x -> x' only if the sorted entries of columns x and
// x' match (a permuted column is a permuted multiset); tau candidates are
// row-fingerprint masks narrowed cell-by-cell as sigma images are fixed.
// Columns are assigned rarest fingerprint first.
template <typename M, typename Eq>
class PairSearch {
 public:
  using PermPair = std::pair<std::vector<Index>, std::vector<Index>>;

  PairSearch(const M& m, Eq eq, std::uint64_t max_nodes)
      : m_(m), eq_(eq), max_nodes_(max_nodes), nx_(m.cols()), ny_(m.rows()) {}

  std::vector<PermPair> run() {
    if (nx_ > 64 || ny_ > 64)
      throw InvalidConstruction("symmetry search supports at most 64 symbols per side");

    auto sorted_of = [](auto vec) {
      std::sort(vec.begin(), vec.end());
      return vec;
    };
    std::vector<std::vector<typename M::Scalar>> col_sorted, row_sorted;
    for (Index x = 0; x < nx_; ++x) {
      std::vector<typename M::Scalar> v(static_cast<std::size_t>(ny_));
      for (Index y = 0; y < ny_; ++y) v[static_cast<std::size_t>(y)] = m_(y, x);
      col_sorted.push_back(sorted_of(std::move(v)));
    }
    for (Index y = 0; y < ny_; ++y) {
      std::vector<typename M::Scalar> v(static_cast<std::size_t>(nx_));
      for (Index x = 0; x < nx_; ++x) v[static_cast<std::size_t>(x)] = m_(y, x);
      row_sorted.push_back(sorted_of(std::move(v)));
    }
    auto multiset_eq = [&](const auto& a, const auto& b) {
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!eq_(a[i], b[i])) return false;
      return true;
    };

    col_compat_.assign(static_cast<std::size_t>(nx_ * nx_), false);
    for (Index x = 0; x < nx_; ++x)
      for (Index x2 = 0; x2 < nx_; ++x2)
        col_compat_[static_cast<std::size_t>(x * nx_ + x2)] =
            multiset_eq(col_sorted[static_cast<std::size_t>(x)],
                        col_sorted[static_cast<std::size_t>(x2)]);

    initial_cand_.assign(static_cast<std::size_t>(ny_), 0);
    for (Index y = 0; y < ny_; ++y)
      for (Index y2 = 0; y2 < ny_; ++y2)
        if (multiset_eq(row_sorted[static_cast<std::size_t>(y)],
                        row_sorted[static_cast<std::size_t>(y2)]))
          initial_cand_[static_cast<std::size_t>(y)] |= 1ULL << y2;

    // match_[x][x2][y] = bitmask of y2 with m(y2, x2) == m(y, x)
    match_.assign(static_cast<std::size_t>(nx_ * nx_), {});
    for (Index x = 0; x < nx_; ++x)
      for (Index x2 = 0; x2 < nx_; ++x2) {
        if (!col_compat_[static_cast<std::size_t>(x * nx_ + x2)]) continue;
        auto& cell = match_[static_cast<std::size_t>(x * nx_ + x2)];
        cell.assign(static_cast<std::size_t>(ny_), 0);
        for (Index y = 0; y < ny_; ++y)
          for (Index y2 = 0; y2 < ny_; ++y2)
            if (eq_(m_(y2, x2), m_(y, x))) cell[static_cast<std::size_t>(y)] |= 1ULL << y2;
      }

    // rarest column fingerprint first
    std::vector<int> class_size(static_cast<std::size_t>(nx_), 0);
    for (Index x = 0; x < nx_; ++x)
      for (Index x2 = 0; x2 < nx_; ++x2)
        if (col_compat_[static_cast<std::size_t>(x * nx_ + x2)])
          ++class_size[static_cast<std::size_t>(x)];
    order_.resize(static_cast<std::size_t>(nx_));
    std::iota(order_.begin(), order_.end(), Index{0});
    std::sort(order_.begin(), order_.end(), [&](Index a, Index b) {
      const int ca = class_size[static_cast<std::size_t>(a)];
      const int cb = class_size[static_cast<std::size_t>(b)];
      return ca != cb ? ca < cb : a < b;
    });

    sigma_.assign(static_cast<std::size_t>(nx_), -1);
    used_cols_ = 0;
    assign_sigma(0, initial_cand_);
    std::sort(results_.begin(), results_.end());
    return std::move(results_);
  }

 private:
  void bump() {
    if (++nodes_ > max_nodes_) throw SearchBudgetExceeded(nodes_);
  }

  void assign_sigma(std::size_t k, const std::vector<std::uint64_t>& cand) {
    if (k == static_cast<std::size_t>(nx_)) {
      std::vector<Index> tau(static_cast<std::size_t>(ny_), -1);
      complete_tau(0, 0, cand, tau);
      return;
    }
    const Index x = order_[k];
    for (Index x2 = 0; x2 < nx_; ++x2) {
      if (used_cols_ & (1ULL << x2)) continue;
      if (!col_compat_[static_cast<std::size_t>(x * nx_ + x2)]) continue;
      bump();
      const auto& masks = match_[static_cast<std::size_t>(x * nx_ + x2)];
      std::vector<std::uint64_t> next(cand);
      bool dead = false;
      for (Index y = 0; y < ny_; ++y) {
        next[static_cast<std::size_t>(y)] &= masks[static_cast<std::size_t>(y)];
        if (next[static_cast<std::size_t>(y)] == 0) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      sigma_[static_cast<std::size_t>(x)] = x2;
      used_cols_ |= 1ULL << x2;
      assign_sigma(k + 1, next);
      used_cols_ &= ~(1ULL << x2);
      sigma_[static_cast<std::size_t>(x)] = -1;
    }
  }

  // Enumerate all perfect matchings y -> cand[y]; each one is a valid tau.
  void complete_tau(Index y, std::uint64_t used_rows, const std::vector<std::uint64_t>& cand,
                    std::vector<Index>& tau) {
    if (y == ny_) {
      results_.emplace_back(sigma_, tau);
      return;
    }
    std::uint64_t options = cand[static_cast<std::size_t>(y)] & ~used_rows;
    while (options) {
      const int y2 = std::countr_zero(options);
      options &= options - 1;
      bump();
      tau[static_cast<std::size_t>(y)] = y2;
      complete_tau(y + 1, used_rows | (1ULL << y2), cand, tau);
      tau[static_cast<std::size_t>(y)] = -1;
    }
  }

  const M& m_;
  Eq eq_;
  std::uint64_t max_nodes_;
  Index nx_, ny_;
  std::uint64_t nodes_ = 0;

  std::vector<bool> col_compat_;
  std::vector<std::uint64_t> initial_cand_;
  std::vector<std::vector<std::uint64_t>> match_;
  std::vector<Index> order_;
  std::vector<Index> sigma_;
  std::uint64_t used_cols_ = 0;
  std::vector<PermPair> results_;
};

template <typename M, typename Eq>
std::vector<std::pair<std::vector<Index>, std::vector<Index>>> search_pairs(
    const M& m, Eq eq, std::uint64_t max_nodes) {
  return PairSearch<M, Eq>(m, eq, max_nodes).run();
}

// Plain double loop over every permutation pair; the oracle for the pruned
// search and the fallback when the budget trips on a small instance.
template <typename M, typename Eq>
std::vector<std::pair<std::vector<Index>, std::vector<Index>>> search_pairs_exhaustive(
    const M& m, Eq eq) {
  const Index nx = m.cols(), ny = m.rows();
  std::vector<Index> sigma(static_cast<std::size_t>(nx));
  std::vector<std::pair<std::vector<Index>, std::vector<Index>>> out;
  std::iota(sigma.begin(), sigma.end(), Index{0});
  do {
    std::vector<Index> tau(static_cast<std::size_t>(ny));
    std::iota(tau.begin(), tau.end(), Index{0});
    do {
      bool ok = true;
      for (Index x = 0; x < nx && ok; ++x)
        for (Index y = 0; y < ny && ok; ++y)
          ok = eq(m(tau[static_cast<std::size_t>(y)], sigma[static_cast<std::size_t>(x)]),
                  m(y, x));
      if (ok) out.emplace_back(sigma, tau);
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  std::sort(out.begin(), out.end());
  return out;
}

inline double factorial_product(Index nx, Index ny) {
  double f = 1.0;
  for (Index i = 2; i <= nx; ++i) f *= static_cast<double>(i);
  for (Index i = 2; i <= ny; ++i) f *= static_cast<double>(i);
  return f;
}

template <typename M, typename Eq>
std::vector<std::pair<std::vector<Index>, std::vector<Index>>> search_pairs_budgeted(
    const M& m, Eq eq, const GroupSearchConfig& cfg) {
  const double space = factorial_product(m.cols(), m.rows());
  if (cfg.force_exhaustive && space <= static_cast<double>(cfg.exhaustive_limit))
    return search_pairs_exhaustive(m, eq);
  try {
    return search_pairs(m, eq, cfg.max_nodes);
  } catch (const SearchBudgetExceeded&) {
    if (space <= static_cast<double>(cfg.exhaustive_limit)) return search_pairs_exhaustive(m, eq);
    throw;
  }
}

inline std::vector<EquivariancePair> to_pairs(
    std::vector<std::pair<std::vector<Index>, std::vector<Index>>> raw, const Alphabet& x,
    const Alphabet& y) {
  std::vector<EquivariancePair> out;
  out.reserve(raw.size());
  for (auto& [s, t] : raw)
    out.push_back({Permutation::from_map(x, std::move(s)), Permutation::from_map(y, std::move(t))});
  return out;
}

}  // namespace detail

// ch(tau.y | sigma.x) == ch(y | x) for every cell.
template <typename S>
bool is_equivariance(const Channel<S>& ch, const EquivariancePair& pair, double tol = 1e-9) {
  if (pair.sigma.size() != ch.input().size || pair.tau.size() != ch.output().size)
    throw DimensionMismatch("is_equivariance: permutation sizes do not match the channel");
  for (Index x = 0; x < ch.input().size; ++x)
    for (Index y = 0; y < ch.output().size; ++y)
      if (!approx_equal(ch(pair.tau(y), pair.sigma(x)), ch(y, x), tol)) return false;
  return true;
}

template <typename S>
bool is_invariance(const Channel<S>& ch, const Permutation& sigma, double tol = 1e-9) {
  return is_equivariance(ch, {sigma, Permutation::identity(ch.output())}, tol);
}

struct EquivarianceGroup {
  Alphabet x, y;
  std::vector<EquivariancePair> pairs;  // lexicographically sorted
  std::size_t order() const { return pairs.size(); }
  bool contains(const EquivariancePair& p) const {
    return std::binary_search(pairs.begin(), pairs.end(), p);
  }
};

template <typename S>
EquivarianceGroup enumerate_group(const Channel<S>& ch, const GroupSearchConfig& cfg = {}) {
  detail::EntryEq<S> eq{cfg.tol};
  auto raw = detail::search_pairs_budgeted(ch.matrix(), eq, cfg);
  return EquivarianceGroup{ch.input(), ch.output(),
                           detail::to_pairs(std::move(raw), ch.input(), ch.output())};
}

template <typename S>
EquivarianceGroup enumerate_group_exhaustive(const Channel<S>& ch, double tol = 1e-9) {
  detail::EntryEq<S> eq{tol};
  auto raw = detail::search_pairs_exhaustive(ch.matrix(), eq);
  return EquivarianceGroup{ch.input(), ch.output(),
                           detail::to_pairs(std::move(raw), ch.input(), ch.output())};
}

// Identity present, closed under componentwise composition and inverses.
inline bool check_group_axioms(const EquivarianceGroup& g) {
  if (g.pairs.empty()) return false;
  if (!g.contains(EquivariancePair::identity(g.x, g.y))) return false;
  for (const auto& a : g.pairs) {
    if (!g.contains(a.inverse())) return false;
    for (const auto& b : g.pairs)
      if (!g.contains(compose(a, b))) return false;
  }
  return true;
}

// Greedy small generating set: scan in sorted order, keep elements outside the
// subgroup generated so far. Closure by breadth-first products with the
// generators, so the cost is O(|G| * |gens|) rather than all-pairs.
inline std::vector<EquivariancePair> generating_set(const EquivarianceGroup& g) {
  std::set<EquivariancePair> closed;
  closed.insert(EquivariancePair::identity(g.x, g.y));
  std::vector<EquivariancePair> gens;
  for (const auto& p : g.pairs) {
    if (closed.count(p)) continue;
    gens.push_back(p);
    std::vector<EquivariancePair> frontier(closed.begin(), closed.end());
    while (!frontier.empty()) {
      std::vector<EquivariancePair> next;
      for (const auto& a : frontier)
        for (const auto& gen : gens) {
          auto c = compose(a, gen);
          if (closed.insert(c).second) next.push_back(std::move(c));
          auto d = compose(gen, a);
          if (closed.insert(d).second) next.push_back(std::move(d));
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Uniformizing input: p(X) whose pushforward through the channel is uniform.

namespace detail {

// Exact Gaussian elimination of [A | u]; returns false when inconsistent.
// On success fills `solution` only when the solution is unique over the given
// column subset.
inline bool eliminate(MatX<Rational> aug, Index vars, std::optional<VecX<Rational>>* solution,
                      Index* rank_out) {
  const Index rows = aug.rows();
  Index rank = 0;
  std::vector<Index> pivot_col;
  for (Index c = 0; c < vars && rank < rows; ++c) {
    Index pivot = -1;
    for (Index r = rank; r < rows; ++r)
      if (aug(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    aug.row(rank).swap(aug.row(pivot));
    aug.row(rank) /= aug(rank, c);
    for (Index r = 0; r < rows; ++r) {
      if (r == rank || aug(r, c) == 0) continue;
      aug.row(r) -= aug(r, c) * aug.row(rank);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (Index r = rank; r < rows; ++r)
    if (aug(r, vars) != 0) return false;
  if (rank_out) *rank_out = rank;
  if (solution) {
    if (rank == vars) {
      VecX<Rational> z = VecX<Rational>::Zero(vars);
      for (Index i = 0; i < rank; ++i) z(pivot_col[static_cast<std::size_t>(i)]) = aug(i, vars);
      *solution = std::move(z);
    } else {
      solution->reset();
    }
  }
  return true;
}

// Every vertex of {p >= 0 : Ap = u} is the unique solution supported on some
// independent column set of size rank(A); enumerate those and average the
// feasible vertices, which maximizes the support among rational solutions.
inline std::optional<Dist<Rational>> uniformize_exact(const Channel<Rational>& ch) {
  const Index nx = ch.input().size, ny = ch.output().size;
  if (nx > 20) throw InvalidConstruction("exact uniformizing solve supports at most 20 inputs");
  const MatX<Rational>& a = ch.matrix();
  VecX<Rational> u(ny);
  for (Index y = 0; y < ny; ++y) u(y) = rational(1, ny);

  MatX<Rational> aug(ny, nx + 1);
  aug.leftCols(nx) = a;
  aug.col(nx) = u;
  Index rank = 0;
  if (!eliminate(aug, nx, nullptr, &rank)) return std::nullopt;

  std::vector<VecX<Rational>> vertices;
  std::vector<Index> subset(static_cast<std::size_t>(rank));
  std::iota(subset.begin(), subset.end(), Index{0});
  auto advance = [&]() {
    Index i = rank - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == nx - rank + i) --i;
    if (i < 0) return false;
    ++subset[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < rank; ++j)
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    return true;
  };
  if (rank > 0 && rank <= nx) {
    do {
      MatX<Rational> sub(ny, rank + 1);
      for (Index k = 0; k < rank; ++k) sub.col(k) = a.col(subset[static_cast<std::size_t>(k)]);
      sub.col(rank) = u;
      std::optional<VecX<Rational>> z;
      if (!eliminate(sub, rank, &z, nullptr) || !z) continue;
      bool nonneg = true;
      for (Index k = 0; k < rank && nonneg; ++k) nonneg = (*z)(k) >= 0;
      if (!nonneg) continue;
      VecX<Rational> full = VecX<Rational>::Zero(nx);
      for (Index k = 0; k < rank; ++k) full(subset[static_cast<std::size_t>(k)]) = (*z)(k);
      if (std::none_of(vertices.begin(), vertices.end(),
                       [&](const VecX<Rational>& v) { return v == full; }))
        vertices.push_back(std::move(full));
    } while (advance());
  }
  if (vertices.empty()) return std::nullopt;
  VecX<Rational> avg = VecX<Rational>::Zero(nx);
  for (const auto& v : vertices) avg += v;
  avg /= Rational(static_cast<long>(vertices.size()));
  return Dist<Rational>::from_mass(ch.input(), std::move(avg));
}

// Active-set least squares for min ||Ap - u|| over the simplex. Declares
// infeasibility when the optimal residual exceeds 1e-8.
inline std::optional<Dist<double>> uniformize_float(const Channel<double>& ch) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const Index nx = ch.input().size, ny = ch.output().size;
  const MatrixXd& a = ch.matrix();
  const VectorXd u = VectorXd::Constant(ny, 1.0 / static_cast<double>(ny));

  VectorXd p = VectorXd::Constant(nx, 1.0 / static_cast<double>(nx));
  std::vector<bool> free_var(static_cast<std::size_t>(nx), true);

  const int max_pass = 50 * static_cast<int>(nx) + 50;
  for (int pass = 0; pass < max_pass; ++pass) {
    std::vector<Index> idx;
    for (Index i = 0; i < nx; ++i)
      if (free_var[static_cast<std::size_t>(i)]) idx.push_back(i);
    const Index k = static_cast<Index>(idx.size());
    if (k == 0) break;

    // Equality-constrained LS on the free set: z = e0 + N t, columns of N are
    // e_i - e_0, so the sum-to-one constraint holds identically.
    MatrixXd af(ny, k);
    for (Index c = 0; c < k; ++c) af.col(c) = a.col(idx[static_cast<std::size_t>(c)]);
    VectorXd z;
    if (k == 1) {
      z = VectorXd::Ones(1);
    } else {
      MatrixXd n = MatrixXd::Zero(k, k - 1);
      for (Index c = 0; c + 1 < k; ++c) {
        n(0, c) = -1.0;
        n(c + 1, c) = 1.0;
      }
      const MatrixXd an = af * n;
      const VectorXd rhs = u - af.col(0);
      const VectorXd t = an.completeOrthogonalDecomposition().solve(rhs);
      z = VectorXd::Zero(k);
      z(0) = 1.0;
      z += n * t;
    }

    if (z.minCoeff() >= -1e-12) {
      for (Index c = 0; c < k; ++c)
        p(idx[static_cast<std::size_t>(c)]) = std::max(z(c), 0.0);
      for (Index i = 0; i < nx; ++i)
        if (!free_var[static_cast<std::size_t>(i)]) p(i) = 0.0;
      // KKT: free gradients share a common value -mu; pinned ones must not
      // offer a descent direction into the simplex.
      const VectorXd g = 2.0 * a.transpose() * (a * p - u);
      double mu = 0.0;
      for (Index c = 0; c < k; ++c) mu -= g(idx[static_cast<std::size_t>(c)]);
      mu /= static_cast<double>(k);
      Index worst = -1;
      double worst_val = -1e-10;
      for (Index i = 0; i < nx; ++i) {
        if (free_var[static_cast<std::size_t>(i)]) continue;
        const double v = g(i) + mu;
        if (v < worst_val) {
          worst_val = v;
          worst = i;
        }
      }
      if (worst < 0) break;
      free_var[static_cast<std::size_t>(worst)] = true;
      continue;
    }

    // Step toward z until the first free coordinate hits zero, then pin it.
    double alpha = 1.0;
    for (Index c = 0; c < k; ++c) {
      const double pi = p(idx[static_cast<std::size_t>(c)]);
      if (z(c) < pi)
        alpha = std::min(alpha, pi / (pi - z(c)));
    }
    for (Index c = 0; c < k; ++c) {
      const Index i = idx[static_cast<std::size_t>(c)];
      p(i) += alpha * (z(c) - p(i));
      if (p(i) <= 1e-14) {
        p(i) = 0.0;
        free_var[static_cast<std::size_t>(i)] = false;
      }
    }
  }

  const double residual = (a * p - u).norm();
  if (residual > 1e-8) return std::nullopt;
  return Dist<double>::from_mass(ch.input(), p, true);
}

}  // namespace detail

// An input distribution pushing forward to the uniform output, or nullopt
// when the uniform distribution is outside the convex hull of the columns.
template <typename S>
std::optional<Dist<S>> find_uniformizing_input(const Channel<S>& ch) {
  if constexpr (scalar_traits<S>::is_exact)
    return detail::uniformize_exact(ch);
  else
    return detail::uniformize_float(ch);
}

// ---------------------------------------------------------------------------
// Cross-validation of the three equivalent descriptions of the equivariance
// group when the output can be uniformized: pairs read off the channel
// entries, pairs absorbed by the canonical compression, and pairs preserving
// the likelihood-ratio relation cell-by-cell.

struct CrossCheckConfig {
  GroupSearchConfig search;
  PartitionConfig partition;
};

template <typename S>
struct CrossCheckReport {
  Dist<S> input;
  Joint<S> joint;
  IIBSolution<S> solution;
  std::vector<EquivariancePair> channel_pairs;      // from channel entries
  std::vector<EquivariancePair> compression_pairs;  // label-preserving under canonical kappa
  std::vector<EquivariancePair> ratio_pairs;        // preserving the ratio relation
  bool pass = false;
};

template <typename S>
CrossCheckReport<S> cross_check_equivariances(const Channel<S>& ch,
                                              const CrossCheckConfig& cfg = {}) {
  auto p = find_uniformizing_input(ch);
  if (!p) throw NoUniformizingInput();
  Joint<S> j = Joint<S>::from_input_and_channel(*p, ch);
  if (!j.fully_supported()) throw JointNotFullySupported();

  CrossCheckReport<S> rep;
  rep.input = *p;
  rep.joint = j;
  rep.solution = solve_iib_max(j, cfg.partition);

  detail::EntryEq<S> eq{cfg.search.tol};
  rep.channel_pairs = detail::to_pairs(detail::search_pairs_budgeted(ch.matrix(), eq, cfg.search),
                                       ch.input(), ch.output());

  // Canonical kappa is deterministic, so kappa o (sigma x tau) == kappa is
  // exactly label preservation on every cell.
  const auto& labels = rep.solution.partition.labels;
  Eigen::MatrixXi label_m(ch.output().size, ch.input().size);
  for (Index x = 0; x < ch.input().size; ++x)
    for (Index y = 0; y < ch.output().size; ++y) label_m(y, x) = labels(x, y);
  rep.compression_pairs = detail::to_pairs(
      detail::search_pairs_budgeted(label_m, std::equal_to<int>{}, cfg.search), ch.input(),
      ch.output());

  MatX<S> ratio_m(ch.output().size, ch.input().size);
  for (Index x = 0; x < ch.input().size; ++x)
    for (Index y = 0; y < ch.output().size; ++y) ratio_m(y, x) = likelihood_ratio(j, x, y);
  rep.ratio_pairs = detail::to_pairs(detail::search_pairs_budgeted(ratio_m, eq, cfg.search),
                                     ch.input(), ch.output());

  rep.pass = rep.channel_pairs == rep.compression_pairs &&
             rep.compression_pairs == rep.ratio_pairs;
  return rep;
}

}  // namespace iib
