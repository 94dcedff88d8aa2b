#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iib/info.hpp"

namespace iib {

struct Cell {
  Index x = 0, y = 0;
  friend bool operator==(const Cell& a, const Cell& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Cell& a, const Cell& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

inline Index cell_index(const Cell& c, Index ny) { return pair_index(c.x, c.y, ny); }

struct PartitionConfig {
  // Float mode: support cells are grouped by single-linkage on log-ratios,
  // splitting at gaps larger than this. Keeps the grouping transitive.
  double ratio_tolerance = 1e-9;
};

// Level sets of the ratio p(x,y) / (p(x)p(y)) over the support of the joint,
// plus the (possibly empty) complement of zero-probability cells. Classes are
// numbered 1..n in increasing order of the smallest product index they
// contain; label 0 is reserved for the complement.
template <typename S>
struct SupportPartition {
  Index nx = 0, ny = 0;
  std::vector<std::vector<Cell>> classes;  // classes[j-1] holds class j, cells sorted
  std::vector<Cell> complement;
  std::vector<S> ratio_of_class;  // value at the smallest-index cell of each class
  Eigen::MatrixXi labels;         // labels(x, y) in 0..n

  Index class_count() const { return static_cast<Index>(classes.size()); }
  bool has_complement() const { return !complement.empty(); }
  int label(Index x, Index y) const { return labels(x, y); }
};

// p(x,y) / (p(x) p(y)). Requires fully supported marginals.
template <typename S>
S likelihood_ratio(const Joint<S>& j, Index x, Index y) {
  const auto px = j.marginal_x().mass();
  const auto py = j.marginal_y().mass();
  if (detail::is_zero(px(x)) || detail::is_zero(py(y))) throw MarginalNotFullSupport();
  return j(x, y) / (px(x) * py(y));
}

template <typename S>
SupportPartition<S> build_partition(const Joint<S>& j, const PartitionConfig& cfg = {}) {
  if (!j.marginals_fully_supported()) throw MarginalNotFullSupport();
  const Index nx = j.x_alphabet().size, ny = j.y_alphabet().size;
  const auto px = j.marginal_x().mass();
  const auto py = j.marginal_y().mass();

  SupportPartition<S> part;
  part.nx = nx;
  part.ny = ny;
  part.labels = Eigen::MatrixXi::Zero(nx, ny);

  std::vector<std::vector<Cell>> groups;
  if constexpr (scalar_traits<S>::is_exact) {
    std::map<Rational, std::vector<Cell>> by_ratio;
    for (Index x = 0; x < nx; ++x)
      for (Index y = 0; y < ny; ++y) {
        if (!j.in_support(x, y)) {
          part.complement.push_back(Cell{x, y});
          continue;
        }
        by_ratio[j(x, y) / (px(x) * py(y))].push_back(Cell{x, y});
      }
    for (auto& [ratio, cells] : by_ratio) groups.push_back(std::move(cells));
  } else {
    std::vector<std::pair<double, Cell>> by_log;
    for (Index x = 0; x < nx; ++x)
      for (Index y = 0; y < ny; ++y) {
        if (!j.in_support(x, y)) {
          part.complement.push_back(Cell{x, y});
          continue;
        }
        by_log.emplace_back(std::log(j(x, y) / (px(x) * py(y))), Cell{x, y});
      }
    std::sort(by_log.begin(), by_log.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    for (std::size_t i = 0; i < by_log.size(); ++i) {
      if (i == 0 || by_log[i].first - by_log[i - 1].first > cfg.ratio_tolerance)
        groups.emplace_back();
      groups.back().push_back(by_log[i].second);
    }
  }

  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end(), [ny](const auto& a, const auto& b) {
    return cell_index(a.front(), ny) < cell_index(b.front(), ny);
  });
  std::sort(part.complement.begin(), part.complement.end());

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const int label = static_cast<int>(g) + 1;
    for (const Cell& c : groups[g]) part.labels(c.x, c.y) = label;
    const Cell rep = groups[g].front();
    part.ratio_of_class.push_back(j(rep.x, rep.y) / (px(rep.x) * py(rep.y)));
  }
  part.classes = std::move(groups);
  return part;
}

// Deterministic clustering onto class labels: cells of class j map to symbol
// "j"; when the complement is non-empty a reserved symbol "0" absorbs it and
// the bottleneck alphabet becomes {0..n}, otherwise {1..n}.
template <typename S>
Bottleneck<S> canonical_kappa(const SupportPartition<S>& part) {
  const Index n = part.class_count();
  const Index t_size = part.has_complement() ? n + 1 : n;
  std::vector<std::string> t_labels;
  for (Index t = 0; t < t_size; ++t)
    t_labels.push_back(std::to_string(part.has_complement() ? t : t + 1));

  MatX<S> m = MatX<S>::Zero(t_size, part.nx * part.ny);
  for (Index x = 0; x < part.nx; ++x)
    for (Index y = 0; y < part.ny; ++y) {
      const int label = part.labels(x, y);
      const Index row = part.has_complement() ? label : label - 1;
      m(row, pair_index(x, y, part.ny)) = S(1);
    }
  Alphabet in = Alphabet::of_size(part.nx * part.ny);
  Channel<S> ch = Channel<S>::from_matrix(std::move(in), Alphabet::with_labels(t_labels),
                                          std::move(m));
  return Bottleneck<S>{std::move(ch), true};
}

// Mass of each ratio class as a distribution over the bottleneck labels 1..n.
template <typename S>
Dist<S> class_mass_dist(const SupportPartition<S>& part, const Joint<S>& j) {
  VecX<S> mass = VecX<S>::Zero(part.class_count());
  for (Index g = 0; g < part.class_count(); ++g)
    for (const Cell& c : part.classes[static_cast<std::size_t>(g)]) mass(g) += j(c.x, c.y);
  return Dist<S>::from_mass(Alphabet::of_size(part.class_count()), std::move(mass), true);
}

template <typename S>
struct IIBSolution {
  Bottleneck<S> kappa;
  Nats lambda_achieved;
  Nats objective;
  SupportPartition<S> partition;
};

// Closed-form optimum at the top constraint level: the canonical clustering
// achieves constraint I(X;Y) with objective equal to the entropy of the class
// masses.
template <typename S>
IIBSolution<S> solve_iib_max(const Joint<S>& j, const PartitionConfig& cfg = {}) {
  SupportPartition<S> part = build_partition(j, cfg);
  Bottleneck<S> kappa = canonical_kappa(part);
  IIBSolution<S> sol;
  sol.lambda_achieved = mutual_information(j);
  sol.objective = entropy(class_mass_dist(part, j));
  sol.kappa = std::move(kappa);
  sol.partition = std::move(part);
  return sol;
}

// A channel is congruent when its per-input output supports are pairwise
// disjoint, i.e. no output row has two positive entries.
template <typename S>
bool is_congruent(const Channel<S>& g, double support_eps = kSupportEpsilon) {
  for (Index b = 0; b < g.output().size; ++b) {
    int hits = 0;
    for (Index a = 0; a < g.input().size; ++a) {
      bool pos;
      if constexpr (scalar_traits<S>::is_exact)
        pos = g(b, a) > S(0);
      else
        pos = g(b, a) > support_eps;
      if (pos && ++hits > 1) return false;
    }
  }
  return true;
}

template <typename S>
struct FactorizationWitness {
  bool ok = false;
  std::optional<Channel<S>> gamma;       // extracted post-processing on success
  std::optional<std::pair<Cell, Cell>> mismatched_cells;
  std::optional<std::pair<int, int>> overlapping_classes;  // labels with shared image support
  std::string reason;
};

// Tests whether kappa restricted to the support factors through the canonical
// clustering as (congruent gamma) o (class labels): per class, all columns
// identical; across classes, image supports disjoint. Columns on complement
// cells are unconstrained.
template <typename S>
FactorizationWitness<S> is_iib_max_solution(const Bottleneck<S>& kappa, const Joint<S>& j,
                                            double tol = 1e-10,
                                            const PartitionConfig& cfg = {}) {
  const SupportPartition<S> part = build_partition(j, cfg);
  const Index ny = j.y_alphabet().size;
  const Index nt = kappa.base.output().size;
  if (kappa.base.input().size != part.nx * ny)
    throw DimensionMismatch("is_iib_max_solution: kappa input is not X x Y");

  FactorizationWitness<S> w;
  MatX<S> gamma(nt, part.class_count());
  for (Index g = 0; g < part.class_count(); ++g) {
    const auto& cells = part.classes[static_cast<std::size_t>(g)];
    const Index rep = cell_index(cells.front(), ny);
    gamma.col(g) = kappa.base.matrix().col(rep);
    for (const Cell& c : cells) {
      const Index a = cell_index(c, ny);
      for (Index t = 0; t < nt; ++t) {
        if (!approx_equal(kappa.base(t, a), kappa.base(t, rep), tol)) {
          w.mismatched_cells = std::make_pair(cells.front(), c);
          w.reason = "columns differ within a ratio class";
          return w;
        }
      }
    }
  }

  // Disjoint image supports across classes.
  const double support_eps = scalar_traits<S>::is_exact ? 0.0 : tol;
  for (Index t = 0; t < nt; ++t) {
    int last = -1;
    for (Index g = 0; g < part.class_count(); ++g) {
      bool pos;
      if constexpr (scalar_traits<S>::is_exact)
        pos = gamma(t, g) > S(0);
      else
        pos = gamma(t, g) > support_eps;
      if (!pos) continue;
      if (last >= 0) {
        w.overlapping_classes = std::make_pair(last + 1, static_cast<int>(g) + 1);
        w.reason = "image supports of two classes overlap";
        return w;
      }
      last = static_cast<int>(g);
    }
  }

  w.ok = true;
  w.gamma = Channel<S>::from_matrix(Alphabet::of_size(part.class_count()), kappa.base.output(),
                                    std::move(gamma), true);
  return w;
}

}  // namespace iib
