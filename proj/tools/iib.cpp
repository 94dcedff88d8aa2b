// Command-line front end: file I/O, subcommands, human- and machine-readable
// reports. Exit codes: 0 ok, 1 usage, 2 invalid input file, 3 support
// violation, 4 no uniformizing input, 5 search budget exceeded, 6 domain
// error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "iib/equivariance.hpp"
#include "iib/generators.hpp"
#include "iib/io.hpp"
#include "iib/reductions.hpp"
#include "iib/soft.hpp"
#include "iib/solver.hpp"

namespace {

using namespace iib;

struct Ctx {
  std::string input;
  std::string out = "-";
  bool json_out = false;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::uint64_t budget = 10'000'000;
  double lambda = -1.0;
  bool bits = false;
  bool uniformize = false;
  std::string command_echo;
};

double display(const Ctx& ctx, double nats) { return ctx.bits ? nats_to_bits(nats) : nats; }

json make_report(const Ctx& ctx, const std::optional<std::string>& digest, json results,
                 double seconds) {
  json rep;
  rep["schema_version"] = kReportSchemaVersion;
  rep["command"] = ctx.command_echo;
  rep["input_digest"] = digest ? json(*digest) : json(nullptr);
  rep["unit"] = ctx.bits ? "bits" : "nats";
  rep["results"] = std::move(results);
  rep["timings"] = json{{"total_seconds", seconds}};
  return rep;
}

void emit(const Ctx& ctx, const json& report, const std::string& human) {
  if (ctx.json_out)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human;
}

json pair_to_json(const EquivariancePair& p) {
  return json{{"sigma", p.sigma.map()},
              {"tau", p.tau.map()},
              {"sigma_cycles", p.sigma.cycle_notation()},
              {"tau_cycles", p.tau.cycle_notation()}};
}

json pairs_to_json(const std::vector<EquivariancePair>& pairs) {
  json arr = json::array();
  for (const auto& p : pairs) arr.push_back(pair_to_json(p));
  return arr;
}

std::string pairs_to_text(const std::vector<EquivariancePair>& pairs) {
  std::string out;
  for (const auto& p : pairs)
    out += "  (" + p.sigma.cycle_notation() + ", " + p.tau.cycle_notation() + ")\n";
  return out;
}

template <typename S>
Joint<S> joint_from(const Ctx& ctx, const Channel<S>& ch, const std::optional<Dist<S>>& px) {
  if (px) return Joint<S>::from_input_and_channel(*px, ch);
  if (!ctx.uniformize)
    throw InvalidFile("input file has no p_x; pass --uniformize to derive one");
  auto p = find_uniformizing_input(ch);
  if (!p) throw NoUniformizingInput();
  return Joint<S>::from_input_and_channel(*p, ch);
}

template <typename S>
std::optional<Dist<S>> px_of(const ChannelFileData& data) {
  if (!data.p_x) return std::nullopt;
  return std::get<Dist<S>>(*data.p_x);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// ---------------------------------------------------------------------------

int cmd_partition(const Ctx& ctx) {
  Timer timer;
  const std::string bytes = slurp(ctx.input);
  const ChannelFileData data = channel_from_json(json::parse(bytes));

  json results;
  std::string human;
  auto handle = [&](auto tag) {
    using S = decltype(tag);
    const auto& ch = std::get<Channel<S>>(data.channel);
    Joint<S> j = joint_from<S>(ctx, ch, px_of<S>(data));
    PartitionConfig pcfg;
    pcfg.ratio_tolerance = ctx.tol;
    IIBSolution<S> sol = solve_iib_max(j, pcfg);
    const auto& part = sol.partition;

    json classes = json::array();
    for (Index g = 0; g < part.class_count(); ++g) {
      json cells = json::array();
      S mass = S(0);
      for (const Cell& c : part.classes[static_cast<std::size_t>(g)]) {
        cells.push_back(json::array({c.x, c.y}));
        mass += j(c.x, c.y);
      }
      classes.push_back(json{{"label", g + 1},
                             {"ratio", detail::scalar_to_json(part.ratio_of_class[static_cast<std::size_t>(g)])},
                             {"mass", detail::scalar_to_json(mass)},
                             {"cells", std::move(cells)}});
    }
    json complement = json::array();
    for (const Cell& c : part.complement) complement.push_back(json::array({c.x, c.y}));

    results["class_count"] = part.class_count();
    results["classes"] = std::move(classes);
    results["complement"] = std::move(complement);
    results["mutual_information"] = display(ctx, sol.lambda_achieved.value);
    results["class_entropy"] = display(ctx, sol.objective.value);
    results["kappa"] = detail::matrix_to_json(sol.kappa.base.matrix());
    results["kappa_deterministic"] = sol.kappa.deterministic;
    results["bottleneck_size"] = sol.kappa.base.output().size;

    human += "classes: " + std::to_string(part.class_count()) + "\n";
    for (Index g = 0; g < part.class_count(); ++g) {
      const auto& cls = part.classes[static_cast<std::size_t>(g)];
      const json ratio = detail::scalar_to_json(part.ratio_of_class[static_cast<std::size_t>(g)]);
      human += "  class " + std::to_string(g + 1) + ": " + std::to_string(cls.size()) +
               " cells, ratio " +
               (ratio.is_string() ? ratio.get<std::string>() : ratio.dump()) + "\n";
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "I(X;Y) = %.6f %s\nH(class masses) = %.6f %s\n",
                  display(ctx, sol.lambda_achieved.value), ctx.bits ? "bits" : "nats",
                  display(ctx, sol.objective.value), ctx.bits ? "bits" : "nats");
    human += buf;
  };
  if (data.exact)
    handle(Rational{});
  else
    handle(double{});

  emit(ctx, make_report(ctx, fnv1a64_hex(bytes), results, timer.seconds()), human);
  return 0;
}

int cmd_group(const Ctx& ctx) {
  Timer timer;
  const std::string bytes = slurp(ctx.input);
  const ChannelFileData data = channel_from_json(json::parse(bytes));

  GroupSearchConfig cfg;
  cfg.tol = ctx.tol;
  cfg.max_nodes = ctx.budget;

  EquivarianceGroup group;
  if (data.exact)
    group = enumerate_group(data.as_exact_channel(), cfg);
  else
    group = enumerate_group(data.as_float_channel(), cfg);

  const auto gens = generating_set(group);
  json results;
  results["order"] = group.order();
  results["pairs"] = pairs_to_json(group.pairs);
  results["generators"] = pairs_to_json(gens);
  // the closure scan is quadratic in the order; skip it for huge groups
  results["axioms_ok"] =
      group.order() <= 2000 ? json(check_group_axioms(group)) : json(nullptr);

  std::string human = "group order " + std::to_string(group.order()) + "\n";
  human += "pairs (sigma, tau):\n" + pairs_to_text(group.pairs);
  human += "generators:\n" + (gens.empty() ? std::string("  (identity only)\n")
                                           : pairs_to_text(gens));
  emit(ctx, make_report(ctx, fnv1a64_hex(bytes), results, timer.seconds()), human);
  return 0;
}

int cmd_verify_theorem1(const Ctx& ctx) {
  Timer timer;
  const std::string bytes = slurp(ctx.input);
  const ChannelFileData data = channel_from_json(json::parse(bytes));

  CrossCheckConfig cfg;
  cfg.search.tol = ctx.tol;
  cfg.search.max_nodes = ctx.budget;
  cfg.partition.ratio_tolerance = ctx.tol;

  json results;
  std::string human;
  auto handle = [&](auto tag) {
    using S = decltype(tag);
    const auto rep = cross_check_equivariances(std::get<Channel<S>>(data.channel), cfg);
    results["pass"] = rep.pass;
    results["order"] = rep.channel_pairs.size();
    results["channel_pairs"] = pairs_to_json(rep.channel_pairs);
    results["compression_pairs"] = pairs_to_json(rep.compression_pairs);
    results["ratio_pairs"] = pairs_to_json(rep.ratio_pairs);
    results["uniformizing_input"] = detail::vector_to_json(rep.input.mass());
    results["mutual_information"] = display(ctx, rep.solution.lambda_achieved.value);
    results["class_count"] = rep.solution.partition.class_count();
    // A: pairs from the channel entries; B: pairs absorbed by the canonical
    // compression; C: pairs preserving the ratio relation.
    human = std::string(rep.pass ? "PASS" : "FAIL") + " A==B==C, order " +
            std::to_string(rep.channel_pairs.size()) + "\n";
    human += "A (channel):\n" + pairs_to_text(rep.channel_pairs);
    if (!rep.pass) {
      human += "B (compression):\n" + pairs_to_text(rep.compression_pairs);
      human += "C (ratio):\n" + pairs_to_text(rep.ratio_pairs);
    }
  };
  if (data.exact)
    handle(Rational{});
  else
    handle(double{});

  emit(ctx, make_report(ctx, fnv1a64_hex(bytes), results, timer.seconds()), human);
  return results["pass"].get<bool>() ? 0 : 6;
}

int cmd_verify_reductions(const Ctx& ctx, int trials) {
  Timer timer;
  double worst_ib = 0.0, worst_sib = 0.0;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = derive_seed(ctx.seed, static_cast<std::uint64_t>(i));
    const Index nx = 2 + static_cast<Index>(s % 2);
    const Index ny = 2 + static_cast<Index>((s >> 8) % 2);
    const Index nt = 2 + static_cast<Index>((s >> 16) % 2);
    const Joint<double> j = random_joint<double>(nx, ny, s);
    const Channel<double> kx = random_channel<double>(nx, nt, s + 1);
    const Channel<double> ky = random_channel<double>(ny, nt, s + 2);
    worst_ib = std::max(worst_ib, verify_ib_identities(kx, j, 1e-10).max_discrepancy);
    worst_sib = std::max(worst_sib, verify_sib_identities(kx, ky, j, 1e-10).max_discrepancy);
  }

  const Joint<double> j2 = random_joint<double>(2, 2, derive_seed(ctx.seed, 999));
  const double total = mutual_information(j2).value;
  json grid = json::array();
  bool grid_pass = true;
  for (double lambda : {0.0, 0.5 * total, total}) {
    const auto rep = check_equality_at_optimum(j2, lambda, 0.01);
    grid_pass = grid_pass && rep.pass;
    grid.push_back(json{{"lambda", lambda},
                        {"best_compression", rep.best_compression},
                        {"achieved_relevance", rep.worst_argmin_relevance},
                        {"grid_modulus", rep.grid_modulus},
                        {"pass", rep.pass}});
  }

  const bool pass = worst_ib <= 1e-10 && worst_sib <= 1e-10 && grid_pass;
  json results;
  results["trials"] = trials;
  results["max_discrepancy_input_compression"] = worst_ib;
  results["max_discrepancy_split_compression"] = worst_sib;
  results["grid_optimum"] = std::move(grid);
  results["pass"] = pass;

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s  max discrepancy: input-side %.3e, split %.3e over %d trials\n",
                pass ? "PASS" : "FAIL", worst_ib, worst_sib, trials);
  emit(ctx, make_report(ctx, std::nullopt, results, timer.seconds()), buf);
  return pass ? 0 : 6;
}

// Builds the bottleneck used by the soft commands: closed form at the top
// level by default, iterative solve when --lambda is given.
Bottleneck<double> soft_kappa(const Ctx& ctx, const Joint<double>& j, std::string* source) {
  if (ctx.lambda >= 0.0) {
    SolverConfig cfg;
    cfg.seed = ctx.seed;
    IterativeSolution sol = solve_iib_at(j, ctx.lambda, cfg);
    *source = "iterative";
    return sol.kappa;
  }
  *source = "closed-form";
  return solve_iib_max(j).kappa;
}

int cmd_soft_check(const Ctx& ctx, const std::string& pair_path) {
  Timer timer;
  const std::string bytes = slurp(ctx.input);
  const ChannelFileData data = channel_from_json(json::parse(bytes));
  const SoftPairFileData pair_data = read_soft_pair_file(pair_path);
  if (pair_data.exact != data.exact)
    throw InvalidFile("pair file and channel file must use the same mode");

  json results;
  std::string human;
  if (data.exact && ctx.lambda < 0.0) {
    const auto& ch = data.as_exact_channel();
    Joint<Rational> j = joint_from<Rational>(ctx, ch, px_of<Rational>(data));
    const auto kappa = solve_iib_max(j).kappa;
    const auto& pair = std::get<SoftPair<Rational>>(pair_data.pair);
    const Rational residual = exact_kernel_residual_value(kappa, pair);
    const bool ok = residual == 0;
    results["kappa_source"] = "closed-form";
    results["residual"] = to_double(residual);
    results["residual_exact_zero"] = ok;
    results["satisfies"] = ok;
    human = std::string(ok ? "PASS" : "FAIL") +
            " exact residual = " + format_rational(residual) + "\n";
  } else {
    Channel<double> ch = data.exact ? data.as_exact_channel().to_float() : data.as_float_channel();
    std::optional<Dist<double>> px;
    if (data.p_x)
      px = data.exact ? std::get<Dist<Rational>>(*data.p_x).to_float()
                      : std::get<Dist<double>>(*data.p_x);
    Joint<double> j = joint_from<double>(ctx, ch, px);
    std::string source;
    const auto kappa = soft_kappa(ctx, j, &source);
    SoftPair<double> pair = pair_data.exact
                                ? std::get<SoftPair<Rational>>(pair_data.pair).to_float()
                                : std::get<SoftPair<double>>(pair_data.pair);
    const double residual = kernel_residual(kappa, pair);
    const bool ok = residual <= (ctx.tol > 0 ? ctx.tol : 1e-8);
    results["kappa_source"] = source;
    results["residual"] = residual;
    results["satisfies"] = ok;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s residual = %.3e (tol %.1e)\n", ok ? "PASS" : "FAIL",
                  residual, ctx.tol > 0 ? ctx.tol : 1e-8);
    human = buf;
  }
  emit(ctx, make_report(ctx, fnv1a64_hex(bytes), results, timer.seconds()), human);
  return 0;
}

int cmd_soft_search(const Ctx& ctx, int seeds, int alt_iters) {
  Timer timer;
  const std::string bytes = slurp(ctx.input);
  const ChannelFileData data = channel_from_json(json::parse(bytes));

  Channel<double> ch = data.exact ? data.as_exact_channel().to_float() : data.as_float_channel();
  std::optional<Dist<double>> px;
  if (data.p_x)
    px = data.exact ? std::get<Dist<Rational>>(*data.p_x).to_float()
                    : std::get<Dist<double>>(*data.p_x);
  Joint<double> j = joint_from<double>(ctx, ch, px);
  std::string source;
  const auto kappa = soft_kappa(ctx, j, &source);

  SoftSearchConfig cfg;
  cfg.seeds = seeds;
  cfg.max_alt_iters = alt_iters;
  cfg.seed = ctx.seed;
  const auto pairs = search_soft_equivariances(kappa, ch.input(), ch.output(), cfg);

  json found = json::array();
  for (const auto& p : pairs)
    found.push_back(json{{"mu", detail::matrix_to_json(p.mu.matrix())},
                         {"eta", detail::matrix_to_json(p.eta.matrix())},
                         {"residual", kernel_residual(kappa, p)}});
  json results;
  results["kappa_source"] = source;
  results["count"] = pairs.size();
  results["pairs"] = std::move(found);

  std::string human = "found " + std::to_string(pairs.size()) +
                      " satisfying pair(s) incl. identity (kappa: " + source + ")\n";
  emit(ctx, make_report(ctx, fnv1a64_hex(bytes), results, timer.seconds()), human);
  return 0;
}

int cmd_solve(const Ctx& ctx, int restarts) {
  Timer timer;
  const std::string bytes = slurp(ctx.input);
  const ChannelFileData data = channel_from_json(json::parse(bytes));
  if (ctx.lambda < 0.0) throw LambdaOutOfRange("solve requires --lambda");

  Channel<double> ch = data.exact ? data.as_exact_channel().to_float() : data.as_float_channel();
  std::optional<Dist<double>> px;
  if (data.p_x)
    px = data.exact ? std::get<Dist<Rational>>(*data.p_x).to_float()
                    : std::get<Dist<double>>(*data.p_x);
  Joint<double> j = joint_from<double>(ctx, ch, px);

  SolverConfig cfg;
  cfg.seed = ctx.seed;
  cfg.restarts = restarts;
  IterativeSolution sol = solve_iib_at(j, ctx.lambda, cfg);

  json restarts_json = json::array();
  for (const auto& r : sol.diagnostics.restarts) {
    json betas = json::array();
    for (const auto& b : r.betas)
      betas.push_back(json{{"beta", b.beta},
                           {"iters", b.iters},
                           {"converged", b.converged},
                           {"constraint", display(ctx, b.constraint)},
                           {"objective", display(ctx, b.objective)}});
    restarts_json.push_back(json{{"restart", r.restart}, {"betas", std::move(betas)}});
  }
  json results;
  results["lambda_target"] = display(ctx, ctx.lambda);
  results["constraint"] = display(ctx, sol.constraint);
  results["objective"] = display(ctx, sol.objective);
  results["converged"] = sol.converged;
  results["chosen_restart"] = sol.diagnostics.chosen_restart;
  results["chosen_beta"] = sol.diagnostics.chosen_beta;
  results["monotone_checks"] = sol.diagnostics.monotone_checks;
  results["monotone_violations"] = sol.diagnostics.monotone_violations;
  results["kappa"] = detail::matrix_to_json(sol.kappa.base.matrix());
  results["diagnostics"] = std::move(restarts_json);

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "achieved constraint %.6f %s (target %.6f), objective %.6f %s%s\n",
                display(ctx, sol.constraint), ctx.bits ? "bits" : "nats",
                display(ctx, ctx.lambda), display(ctx, sol.objective),
                ctx.bits ? "bits" : "nats", sol.converged ? "" : " [not converged]");
  emit(ctx, make_report(ctx, fnv1a64_hex(bytes), results, timer.seconds()), buf);
  return 0;
}

int cmd_gen(const Ctx& ctx, const std::string& kind, Index nx, Index ny, const std::string& eps,
            const std::string& profile, Index block_size, Index block_count,
            const std::string& mode) {
  const bool exact = mode == "exact";
  if (!exact && mode != "float") throw InvalidFile("--mode must be exact or float");

  json out;
  auto finish_exact = [&](const Channel<Rational>& ch, const Dist<Rational>* px) {
    out = channel_to_json(ch, px);
  };
  auto finish_float = [&](const Channel<double>& ch, const Dist<double>* px) {
    out = channel_to_json(ch, px);
  };

  auto parse_profile_exact = [&](Index n) {
    if (profile.empty()) {
      const Rational e = eps.empty() ? rational(1, 100) : parse_rational(eps);
      VecX<Rational> p(n);
      p(0) = 1 - (n - 1) * e;
      for (Index i = 1; i < n; ++i) p(i) = e;
      return Dist<Rational>::from_mass(Alphabet::of_size(n), std::move(p));
    }
    std::vector<Rational> vals;
    std::stringstream ss(profile);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(parse_rational(tok));
    VecX<Rational> p(static_cast<Index>(vals.size()));
    for (Index i = 0; i < p.size(); ++i) p(i) = vals[static_cast<std::size_t>(i)];
    Alphabet a = Alphabet::of_size(p.size());
    return Dist<Rational>::from_mass(std::move(a), std::move(p));
  };

  auto parse_profile_float = [&](Index n) {
    if (profile.empty()) {
      const double e = eps.empty() ? 0.01 : std::stod(eps);
      VecX<double> p(n);
      p(0) = 1.0 - static_cast<double>(n - 1) * e;
      for (Index i = 1; i < n; ++i) p(i) = e;
      return Dist<double>::from_mass(Alphabet::of_size(n), std::move(p));
    }
    std::vector<double> vals;
    std::stringstream ss(profile);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    VecX<double> p(static_cast<Index>(vals.size()));
    for (Index i = 0; i < p.size(); ++i) p(i) = vals[static_cast<std::size_t>(i)];
    Alphabet a = Alphabet::of_size(p.size());
    return Dist<double>::from_mass(std::move(a), std::move(p), true);
  };

  if (kind == "circulant") {
    if (exact) {
      const Dist<Rational> prof = parse_profile_exact(nx);
      finish_exact(circulant_channel<Rational>(prof.size(), prof), nullptr);
    } else {
      const Dist<double> prof = parse_profile_float(nx);
      finish_float(circulant_channel<double>(prof.size(), prof), nullptr);
    }
  } else if (kind == "near_identity") {
    if (exact) {
      const Rational e = eps.empty() ? rational(1, 100) : parse_rational(eps);
      finish_exact(near_identity_channel<Rational>(nx, e), nullptr);
    } else {
      const double e = eps.empty() ? 0.01 : std::stod(eps);
      finish_float(near_identity_channel<double>(nx, e), nullptr);
    }
  } else if (kind == "block_permutation") {
    const auto planted = planted_block_doubly_stochastic(block_size, block_count, ctx.seed);
    if (exact)
      finish_exact(planted.channel, nullptr);
    else
      finish_float(planted.channel.to_float(), nullptr);
  } else if (kind == "random_dense") {
    if (exact)
      finish_exact(random_channel<Rational>(nx, ny, ctx.seed), nullptr);
    else
      finish_float(random_channel<double>(nx, ny, ctx.seed), nullptr);
  } else if (kind == "independent") {
    // output independent of input; includes a uniform p_x so the joint exists
    if (exact) {
      const auto q = random_joint<Rational>(1, ny, ctx.seed).marginal_y();
      const Channel<Rational> ch = Channel<Rational>::constant(Alphabet::of_size(nx), q);
      const Dist<Rational> px = Dist<Rational>::uniform(Alphabet::of_size(nx));
      finish_exact(ch, &px);
    } else {
      const auto q = random_joint<double>(1, ny, ctx.seed).marginal_y();
      const Channel<double> ch = Channel<double>::constant(Alphabet::of_size(nx), q);
      const Dist<double> px = Dist<double>::uniform(Alphabet::of_size(nx));
      finish_float(ch, &px);
    }
  } else {
    throw InvalidFile("unknown --kind: " + kind);
  }

  const std::string text = out.dump(2) + "\n";
  if (ctx.out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(ctx.out, std::ios::binary);
    if (!f) throw InvalidFile("cannot write " + ctx.out);
    f << text;
  }
  return 0;
}

int cmd_perturb(const Ctx& ctx, double eps, bool study) {
  Timer timer;
  const std::string bytes = slurp(ctx.input);
  const ChannelFileData data = channel_from_json(json::parse(bytes));
  Channel<double> ch = data.exact ? data.as_exact_channel().to_float() : data.as_float_channel();

  if (!study) {
    const Channel<double> noisy = perturb(ch, eps, ctx.seed);
    const std::string text = channel_to_json(noisy).dump(2) + "\n";
    if (ctx.out == "-") {
      std::cout << text;
    } else {
      std::ofstream f(ctx.out, std::ios::binary);
      if (!f) throw InvalidFile("cannot write " + ctx.out);
      f << text;
    }
    return 0;
  }

  PerturbationConfig cfg;
  cfg.search.tol = ctx.tol;
  cfg.search.max_nodes = ctx.budget;
  const PerturbationReport rep = perturbation_study(ch, eps, ctx.seed, cfg);

  json pairs = json::array();
  for (std::size_t g = 0; g < rep.base_group.size(); ++g)
    pairs.push_back(json{{"pair", pair_to_json(rep.base_group[g])},
                         {"residuals", rep.residuals[g]}});
  json results;
  results["epsilon"] = eps;
  results["mutual_information"] = display(ctx, rep.mutual_information);
  results["lambda_achieved"] = rep.lambda_achieved;
  results["group_order"] = rep.base_group.size();
  results["pairs"] = std::move(pairs);

  std::string human = "perturbation study: eps " + std::to_string(eps) + ", group order " +
                      std::to_string(rep.base_group.size()) + ", grid points " +
                      std::to_string(rep.lambda_achieved.size()) + "\n";
  emit(ctx, make_report(ctx, fnv1a64_hex(bytes), results, timer.seconds()), human);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intertwining information bottleneck toolkit"};
  app.require_subcommand(1);

  Ctx ctx;
  for (int i = 0; i < argc; ++i) ctx.command_echo += std::string(i ? " " : "") + argv[i];

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("--input", ctx.input, "channel file")->required();
    sub->add_flag("--json", ctx.json_out, "machine-readable report on stdout");
    sub->add_option("--seed", ctx.seed, "random seed");
    sub->add_option("--tol", ctx.tol, "comparison tolerance");
    sub->add_option("--budget", ctx.budget, "search node budget");
    sub->add_flag("--bits", ctx.bits, "display information in bits");
    sub->add_flag("--uniformize", ctx.uniformize, "derive p_x making the output uniform");
    return sub;
  };

  auto* partition = add_common(app.add_subcommand("partition", "ratio classes and canonical compression"), true);

  auto* group = add_common(app.add_subcommand("group", "enumerate the exact equivariance group"), true);

  auto* verify1 = add_common(app.add_subcommand("verify-theorem1", "cross-validate the three equivariance descriptions"), true);

  int trials = 100;
  auto* verifyred = add_common(app.add_subcommand("verify-reductions", "check the compression-shape identities"), false);
  verifyred->add_option("--trials", trials, "random instances per identity");

  std::string pair_path;
  auto* softcheck = add_common(app.add_subcommand("soft-check", "test a stochastic pair against a bottleneck solution"), true);
  softcheck->add_option("--pair", pair_path, "pair file with mu and eta")->required();
  softcheck->add_option("--lambda", ctx.lambda, "constraint level (nats); omit for the closed form");

  int seeds = 32, alt_iters = 200;
  auto* softsearch = add_common(app.add_subcommand("soft-search", "search for stochastic pairs the bottleneck absorbs"), true);
  softsearch->add_option("--seeds", seeds, "random starts");
  softsearch->add_option("--alt-iters", alt_iters, "alternating iterations per start");
  softsearch->add_option("--lambda", ctx.lambda, "constraint level (nats); omit for the closed form");

  int restarts = 8;
  auto* solve = add_common(app.add_subcommand("solve", "iterative solve at a constraint level"), true);
  solve->add_option("--lambda", ctx.lambda, "constraint level in nats")->required();
  solve->add_option("--restarts", restarts, "independent restarts");

  std::string kind = "circulant", eps_str, profile, mode = "float";
  Index nx = 3, ny = 0, block_size = 2, block_count = 2;
  auto* gen = add_common(app.add_subcommand("gen", "generate channel files with planted structure"), false);
  gen->add_option("--kind", kind, "circulant|block_permutation|near_identity|random_dense|independent");
  gen->add_option("--n,--nx", nx, "input size");
  gen->add_option("--ny", ny, "output size (defaults to --n)");
  gen->add_option("--eps", eps_str, "noise level (rational string in exact mode)");
  gen->add_option("--profile", profile, "comma-separated circulant profile");
  gen->add_option("--block-size", block_size, "symbols per block");
  gen->add_option("--blocks", block_count, "number of blocks");
  gen->add_option("--mode", mode, "exact|float");
  gen->add_option("--out", ctx.out, "output path ('-' for stdout)");

  double perturb_eps = 0.01;
  bool study = false;
  auto* perturbcmd = add_common(app.add_subcommand("perturb", "multiplicative noise; optional retention study"), true);
  perturbcmd->add_option("--eps", perturb_eps, "relative noise magnitude in [0,1)");
  perturbcmd->add_flag("--study", study, "run the soft-equivariance retention study");
  perturbcmd->add_option("--out", ctx.out, "output path for the perturbed channel");

  CLI11_PARSE(app, argc, argv);

  auto guarded = [&](auto&& fn) -> int {
    try {
      return fn();
    } catch (const InvalidFile& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const InvalidConstruction& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const MarginalNotFullSupport& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    } catch (const JointNotFullySupported& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    } catch (const NoUniformizingInput& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 4;
    } catch (const SearchBudgetExceeded& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 5;
    } catch (const LambdaOutOfRange& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 6;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 6;
    }
  };

  if (partition->parsed()) return guarded([&] { return cmd_partition(ctx); });
  if (group->parsed()) return guarded([&] { return cmd_group(ctx); });
  if (verify1->parsed()) return guarded([&] { return cmd_verify_theorem1(ctx); });
  if (verifyred->parsed()) return guarded([&] { return cmd_verify_reductions(ctx, trials); });
  if (softcheck->parsed()) return guarded([&] { return cmd_soft_check(ctx, pair_path); });
  if (softsearch->parsed()) return guarded([&] { return cmd_soft_search(ctx, seeds, alt_iters); });
  if (solve->parsed()) return guarded([&] { return cmd_solve(ctx, restarts); });
  if (gen->parsed())
    return guarded([&] {
      if (ny <= 0) ny = nx;
      return cmd_gen(ctx, kind, nx, ny, eps_str, profile, block_size, block_count, mode);
    });
  if (perturbcmd->parsed()) return guarded([&] { return cmd_perturb(ctx, perturb_eps, study); });
  return 1;
}
