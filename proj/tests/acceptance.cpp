// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and budgets are pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "iib/equivariance.hpp"
#include "iib/generators.hpp"
#include "iib/reductions.hpp"
#include "iib/soft.hpp"
#include "iib/solver.hpp"
#include "test_util.hpp"

using namespace iib;

namespace {

int failures = 0;

struct Criterion {
  int number;
  const char* label;
  std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Exact channels with rational entries, full support, and (by construction or
// by check) a uniformizing input.
struct ExactCorpus {
  std::vector<Channel<Rational>> channels;
  std::vector<Joint<Rational>> joints;  // the cross-check joints, same order
};

ExactCorpus build_exact_corpus() {
  std::vector<Channel<Rational>> candidates;
  // circulants, n = 2..5, random fully-supported profiles
  for (Index n = 2; n <= 5; ++n)
    for (int i = 0; i < 20; ++i) {
      std::mt19937_64 rng(derive_seed(10'000 + n, static_cast<std::uint64_t>(i)));
      VecX<Rational> p(n);
      Rational total = 0;
      for (Index k = 0; k < n; ++k) {
        p(k) = rational(uniform_long(rng, 1, 999), 1000);
        total += p(k);
      }
      for (Index k = 0; k < n; ++k) p(k) /= total;
      candidates.push_back(
          circulant_channel<Rational>(n, Dist<Rational>::from_mass(Alphabet::of_size(n), p)));
    }
  // near-identity circulants
  for (Index n = 2; n <= 5; ++n)
    candidates.push_back(near_identity_channel<Rational>(n, rational(1, 100)));
  // near-identity generic: dominant diagonal plus a random dense part
  for (Index n = 3; n <= 4; ++n)
    for (int i = 0; i < 20; ++i) {
      const auto noise = random_channel<Rational>(n, n, derive_seed(20'000 + n, i));
      MatX<Rational> m = noise.matrix() * rational(1, 10);
      for (Index d = 0; d < n; ++d) m(d, d) += rational(9, 10);
      Alphabet a = Alphabet::of_size(n);
      candidates.push_back(Channel<Rational>::from_matrix(a, a, std::move(m)));
    }
  // doubly stochastic randoms
  for (Index n = 3; n <= 5; ++n)
    for (int i = 0; i < 20; ++i)
      candidates.push_back(random_doubly_stochastic(n, 4, derive_seed(30'000 + n, i)));
  // planted blocks over a doubly stochastic base
  for (int i = 0; i < 30; ++i)
    candidates.push_back(planted_block_doubly_stochastic(2, 2, derive_seed(40'000, i)).channel);
  return ExactCorpus{std::move(candidates), {}};
}

bool criterion_1(std::string& detail, ExactCorpus& corpus) {
  const auto t0 = std::chrono::steady_clock::now();
  int in_scope = 0, passed = 0;
  for (const auto& ch : corpus.channels) {
    CrossCheckReport<Rational> rep;
    try {
      rep = cross_check_equivariances(ch);
    } catch (const NoUniformizingInput&) {
      continue;
    } catch (const JointNotFullySupported&) {
      continue;
    }
    ++in_scope;
    if (rep.pass) {
      ++passed;
      corpus.joints.push_back(rep.joint);
    }
  }
  const double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d channels agree on all three descriptions, %.1f s",
                passed, in_scope, dt);
  detail = buf;
  return passed == in_scope && in_scope >= 200 && dt < 60.0;
}

bool criterion_2(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = derive_seed(50'000, static_cast<std::uint64_t>(i));
    const Index nx = 2 + static_cast<Index>(s % 2), ny = 2 + static_cast<Index>((s >> 4) % 2);
    const auto j = random_joint<double>(nx, ny, s);
    const Index nt = 1 + static_cast<Index>((s >> 8) % static_cast<std::uint64_t>(nx * ny));
    const auto kappa = random_channel<double>(nx * ny, nt, s + 1);
    if (iib_constraint(kappa, j).value <= mutual_information(j).value + 1e-12) ++ok;
  }
  const double dt = seconds_since(t0);
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/%d pairs below the bound, %.1f s", ok, trials, dt);
  detail = buf;
  return ok == trials && dt < 10.0;
}

bool criterion_3(std::string& detail, const ExactCorpus& corpus) {
  int exact_ok = 0, float_ok = 0, total = 0;
  for (const auto& j : corpus.joints) {
    ++total;
    const auto sol = solve_iib_max(j);
    const bool c_exact =
        exact_iib_constraint_terms(sol.kappa.base, j) == exact_mutual_information_terms(j);
    const bool o_exact = exact_iib_objective_terms(sol.kappa.base, j) ==
                         exact_entropy_terms(class_mass_dist(sol.partition, j));
    if (c_exact && o_exact) ++exact_ok;

    const auto jf = j.to_float();
    const auto solf = solve_iib_max(jf);
    const bool c_float =
        std::abs(iib_constraint(solf.kappa, jf).value - mutual_information(jf).value) <= 1e-10;
    const double class_h = entropy(class_mass_dist(solf.partition, jf)).value;
    const bool o_float = std::abs(iib_objective(solf.kappa, jf).value - class_h) <= 1e-10;
    if (c_float && o_float) ++float_ok;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "exact %d/%d, float %d/%d corpus joints", exact_ok, total,
                float_ok, total);
  detail = buf;
  return exact_ok == total && float_ok == total && total >= 200;
}

bool criterion_4(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Joint<Rational>> joints;
  for (int i = 0; i < 6; ++i) joints.push_back(random_joint<Rational>(2, 2, 60'000 + i));
  for (int i = 0; i < 5; ++i) joints.push_back(random_joint<Rational>(2, 3, 61'000 + i));
  for (int i = 0; i < 3; ++i) joints.push_back(random_joint<Rational>(2, 4, 62'000 + i));
  for (int i = 0; i < 3; ++i) joints.push_back(random_joint<Rational>(3, 3, 63'000 + i));
  joints.push_back(testutil::bsc_joint());

  long checked = 0;
  bool all_ok = true;
  for (const auto& j : joints) {
    const Index m = j.x_alphabet().size * j.y_alphabet().size;
    const auto part = build_partition(j);
    const auto mi_terms = exact_mutual_information_terms(j);
    const auto canonical_obj = exact_entropy_terms(class_mass_dist(part, j));
    const double canonical_value = canonical_obj.value();
    const auto label_of = [&](Index cell) {
      return part.labels(cell / j.y_alphabet().size, cell % j.y_alphabet().size);
    };
    testutil::set_partitions(static_cast<int>(m), [&](const std::vector<int>& assign) {
      ++checked;
      const int blocks = 1 + *std::max_element(assign.begin(), assign.end());
      bool refines = true;
      for (int b = 0; b < blocks && refines; ++b) {
        int seen = -1;
        for (Index a = 0; a < m; ++a) {
          if (assign[static_cast<std::size_t>(a)] != b) continue;
          if (seen < 0)
            seen = label_of(a);
          else if (seen != label_of(a))
            refines = false;
        }
      }
      const auto kappa = testutil::kappa_from_blocks(assign, blocks);
      const bool hits = exact_iib_constraint_terms(kappa.base, j) == mi_terms;
      if (hits != refines) all_ok = false;  // (a)
      if (hits) {                           // (b)
        const auto obj = exact_iib_objective_terms(kappa.base, j);
        if (obj.value() < canonical_value - 1e-12) all_ok = false;
        bool same_partition = true;
        for (Index a = 0; a < m && same_partition; ++a)
          for (Index b2 = a + 1; b2 < m && same_partition; ++b2) {
            const bool sb =
                assign[static_cast<std::size_t>(a)] == assign[static_cast<std::size_t>(b2)];
            same_partition = (sb == (label_of(a) == label_of(b2)));
          }
        if ((obj == canonical_obj) != same_partition) all_ok = false;
      }
    });
  }
  const double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%ld clusterings over %zu joints enumerated, %.1f s", checked,
                joints.size(), dt);
  detail = buf;
  return all_ok && dt < 120.0;
}

bool criterion_5(std::string& detail) {
  double worst_ib = 0.0, worst_sib = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t s = derive_seed(70'000, static_cast<std::uint64_t>(i));
    const Index nx = 2 + static_cast<Index>(s % 2);
    const Index ny = 2 + static_cast<Index>((s >> 4) % 2);
    const Index nt = 2 + static_cast<Index>((s >> 8) % 2);
    const auto j = random_joint<double>(nx, ny, s);
    const auto kx = random_channel<double>(nx, nt, s + 1);
    const auto ky = random_channel<double>(ny, nt, s + 2);
    worst_ib = std::max(worst_ib, verify_ib_identities(kx, j, 1e-10).max_discrepancy);
    worst_sib = std::max(worst_sib, verify_sib_identities(kx, ky, j, 1e-10).max_discrepancy);
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "max discrepancy: one-sided %.2e, split %.2e", worst_ib,
                worst_sib);
  detail = buf;
  return worst_ib <= 1e-10 && worst_sib <= 1e-10;
}

bool criterion_6(std::string& detail) {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t s = derive_seed(80'000, static_cast<std::uint64_t>(i));
    const Index nx = 2 + static_cast<Index>(s % 2), ny = 2;
    const auto j = random_joint<double>(nx, ny, s);
    const Index nt = 2 + static_cast<Index>((s >> 4) % 2);
    const auto kappa = random_channel<double>(nx * ny, nt, s + 1);
    std::mt19937_64 rng(s + 2);
    MatX<double> g = MatX<double>::Zero(2 * nt, nt);
    for (Index t = 0; t < nt; ++t) {
      const double w = 0.1 + 0.8 * unit_double(rng);
      g(2 * t, t) = w;
      g(2 * t + 1, t) = 1.0 - w;
    }
    const auto gamma =
        Channel<double>::from_matrix(Alphabet::of_size(nt), Alphabet::of_size(2 * nt), g);
    const auto post = compose(gamma, kappa);
    worst = std::max(worst, std::abs(iib_constraint(post, j).value -
                                     iib_constraint(kappa, j).value));
    worst = std::max(worst,
                     std::abs(iib_objective(post, j).value - iib_objective(kappa, j).value));
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "max change under congruent post-composition %.2e", worst);
  detail = buf;
  return worst <= 1e-10;
}

bool criterion_7(std::string& detail) {
  int agree = 0;
  const int trials = 500;
  bool closure_ok = true;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = derive_seed(90'000, static_cast<std::uint64_t>(i));
    const auto j = random_joint<Rational>(2, 2, s);
    const auto kappa = solve_iib_max(j).kappa;
    // mix of likely-satisfying and generic pairs
    SoftPair<Rational> pair = [&]() {
      const Alphabet a2 = Alphabet::of_size(2);
      switch (i % 4) {
        case 0:
          return SoftPair<Rational>::identity(a2, a2);
        case 1: {
          const auto swap = Permutation::transposition(a2, 0, 1);
          return SoftPair<Rational>::from_permutations(swap, swap);
        }
        case 2:
          return SoftPair<Rational>{random_channel<Rational>(2, 2, s + 1),
                                    random_channel<Rational>(2, 2, s + 2)};
        default: {
          const auto swap = Permutation::transposition(a2, 0, 1);
          return SoftPair<Rational>{permutation_channel<Rational>(swap),
                                    random_channel<Rational>(2, 2, s + 3)};
        }
      }
    }();
    const bool via_equality = is_soft_equivariance(kappa, pair, 0.0);
    const bool via_kernel = exact_kernel_residual_value(kappa, pair) == 0;
    if (via_equality == via_kernel) ++agree;
    // semigroup closure on the satisfying side
    if (via_equality) {
      const auto sq = compose_pairs(pair, pair);
      if (!is_soft_equivariance(kappa, sq, 0.0)) closure_ok = false;
      const auto with_id = compose_pairs(
          pair, SoftPair<Rational>::identity(Alphabet::of_size(2), Alphabet::of_size(2)));
      if (!is_soft_equivariance(kappa, with_id, 0.0)) closure_ok = false;
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/%d formulations agree, closure %s", agree, trials,
                closure_ok ? "holds" : "broken");
  detail = buf;
  return agree == trials && closure_ok;
}

bool criterion_8(std::string& detail) {
  const Alphabet prod = Alphabet::of_size(6);
  const auto kappa = Bottleneck<Rational>::of(
      Channel<Rational>::constant(prod, Dist<Rational>::point_mass(Alphabet::of_size(1), 0)));
  int ok = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = derive_seed(100'000, static_cast<std::uint64_t>(i));
    SoftPair<Rational> pair{random_channel<Rational>(2, 2, s),
                            random_channel<Rational>(3, 3, s + 1)};
    if (is_soft_equivariance(kappa, pair, 0.0)) ++ok;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/%d stochastic pairs absorbed by the trivial bottleneck", ok,
                trials);
  detail = buf;
  return ok == trials;
}

bool criterion_9(std::string& detail) {
  std::vector<Joint<double>> corpus;
  corpus.push_back(testutil::bsc_joint().to_float());
  {
    const auto ch = circulant_channel<double>(
        3, Dist<double>::from_mass(Alphabet::of_size(3),
                                   (VecX<double>(3) << 0.6, 0.3, 0.1).finished()));
    corpus.push_back(Joint<double>::from_input_and_channel(
        Dist<double>::uniform(Alphabet::of_size(3)), ch));
  }
  // a generic random joint with well-separated ratio classes; near-degenerate
  // instances (log-ratio gaps under ~1e-2) exceed the annealing resolution of
  // the heuristic solver and are out of scope for this sanity criterion
  corpus.push_back(random_joint<double>(2, 2, 8));
  corpus.push_back(
      Joint<double>::from_input_and_channel(Dist<double>::uniform(Alphabet::of_size(4)),
                                            random_doubly_stochastic(4, 4, 2023).to_float()));

  bool ok = true;
  double worst_c = 0.0, worst_o = 0.0;
  for (const auto& j : corpus) {
    const auto closed = solve_iib_max(j);
    for (double target : {0.0, closed.lambda_achieved.value}) {
      SolverConfig cfg;
      cfg.seed = 7;
      const auto sol = solve_iib_at(j, target, cfg);
      const double expect_obj = target == 0.0 ? 0.0 : closed.objective.value;
      worst_c = std::max(worst_c, std::abs(sol.constraint - target));
      worst_o = std::max(worst_o, std::abs(sol.objective - expect_obj));
      // bit-identical rerun
      const auto again = solve_iib_at(j, target, cfg);
      if (!(again.kappa.base.matrix().array() == sol.kappa.base.matrix().array()).all())
        ok = false;
      if (again.constraint != sol.constraint || again.objective != sol.objective) ok = false;
    }
  }
  char buf[140];
  std::snprintf(buf, sizeof buf, "worst |constraint-target| %.2e, worst |objective-closed| %.2e",
                worst_c, worst_o);
  detail = buf;
  return ok && worst_c <= 1e-4 && worst_o <= 1e-3;
}

bool criterion_10(std::string& detail, const ExactCorpus& corpus) {
  const auto t0 = std::chrono::steady_clock::now();
  int compared = 0;
  bool ok = true;
  for (const auto& ch : corpus.channels) {
    if (ch.input().size > 4 || ch.output().size > 4) continue;
    if (compared >= 60) break;
    ++compared;
    const auto fast = enumerate_group(ch);
    const auto brute = enumerate_group_exhaustive(ch);
    if (!(fast.pairs == brute.pairs)) ok = false;
    const auto chf = ch.to_float();
    if (!(enumerate_group(chf).pairs == enumerate_group_exhaustive(chf).pairs)) ok = false;
  }
  // 6x6 circulant with a strictly decreasing profile, pruned search only
  VecX<double> p(6);
  p << 0.30, 0.25, 0.19, 0.13, 0.08, 0.05;
  const auto big =
      circulant_channel<double>(6, Dist<double>::from_mass(Alphabet::of_size(6), p));
  const auto t1 = std::chrono::steady_clock::now();
  const auto group6 = enumerate_group(big);
  const double dt6 = seconds_since(t1);
  if (group6.order() != 6) ok = false;

  char buf[140];
  std::snprintf(buf, sizeof buf, "%d oracle comparisons, 6x6 circulant in %.2f s (order %zu)",
                compared, dt6, group6.order());
  detail = buf;
  return ok && compared >= 40 && dt6 < 5.0 && seconds_since(t0) < 120.0;
}

bool criterion_11(std::string& detail) {
  const auto ch = testutil::bsc_channel().to_float();
  PerturbationConfig cfg;
  cfg.lambda_fractions = {1.0};  // the top grid point uses the closed form
  const Alphabet a2 = Alphabet::of_size(2);
  const auto swap = Permutation::transposition(a2, 0, 1);
  const EquivariancePair swap_pair{swap, swap};

  int monotone = 0;
  bool zero_ok = true;
  const int seeds = 50;
  for (int s = 0; s < seeds; ++s) {
    double prev = -1.0;
    bool non_decreasing = true;
    for (double eps : {0.0, 0.01, 0.05}) {
      const auto rep = perturbation_study(ch, eps, static_cast<std::uint64_t>(s), cfg);
      double value = -1.0;
      for (std::size_t g = 0; g < rep.base_group.size(); ++g)
        if (rep.base_group[g] == swap_pair) value = rep.residuals[g][0];
      if (eps == 0.0 && value != 0.0) zero_ok = false;
      if (value < prev - 1e-12) non_decreasing = false;
      prev = value;
    }
    if (non_decreasing) ++monotone;
  }
  char buf[140];
  std::snprintf(buf, sizeof buf, "residual 0 at eps=0: %s; non-decreasing on %d/%d seeds",
                zero_ok ? "yes" : "no", monotone, seeds);
  detail = buf;
  return zero_ok && monotone >= 45;
}

}  // namespace

int main() {
  ExactCorpus corpus = build_exact_corpus();

  auto report = [&](int number, const char* label, bool pass, const std::string& detail,
                    double dt) {
    std::printf("[%s] criterion %2d: %-52s %s (%.1f s)\n", pass ? "PASS" : "FAIL", number, label,
                detail.c_str(), dt);
    if (!pass) ++failures;
  };

  auto timed = [&](int number, const char* label, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    const bool pass = fn(detail);
    report(number, label, pass, detail, seconds_since(t0));
  };

  timed(1, "three-way equivariance agreement, exact corpus",
        [&](std::string& d) { return criterion_1(d, corpus); });
  timed(2, "compression never exceeds the mutual information",
        [&](std::string& d) { return criterion_2(d); });
  timed(3, "closed-form optimum attains I(X;Y) and the class entropy",
        [&](std::string& d) { return criterion_3(d, corpus); });
  timed(4, "exhaustive clustering oracle at product size <= 9",
        [&](std::string& d) { return criterion_4(d); });
  timed(5, "compression-shape identities over random instances",
        [&](std::string& d) { return criterion_5(d); });
  timed(6, "congruent post-composition neutrality",
        [&](std::string& d) { return criterion_6(d); });
  timed(7, "soft-equivariance formulations agree exactly",
        [&](std::string& d) { return criterion_7(d); });
  timed(8, "zero-level bottleneck absorbs every stochastic pair",
        [&](std::string& d) { return criterion_8(d); });
  timed(9, "iterative solver sanity at the extreme targets",
        [&](std::string& d) { return criterion_9(d); });
  timed(10, "pruned group search equals the exhaustive oracle",
        [&](std::string& d) { return criterion_10(d, corpus); });
  timed(11, "perturbation retention trend for the planted pair",
        [&](std::string& d) { return criterion_11(d); });

  if (failures == 0)
    std::printf("acceptance: all 11 criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
