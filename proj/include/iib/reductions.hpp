#pragma once

#include <vector>

#include "iib/info.hpp"
#include "iib/ops.hpp"

namespace iib {

enum class LiftKind { CompressInput, CompressOutput, Split };

// A bottleneck on the product space assembled from per-coordinate channels:
// compress X and copy Y, copy X and compress Y, or compress both separately.
template <typename S>
struct LiftedChannel {
  LiftKind kind = LiftKind::CompressInput;
  std::vector<Channel<S>> factors;
  Bottleneck<S> lifted;
};

template <typename S>
LiftedChannel<S> lift_input_compression(const Channel<S>& kx, const Alphabet& y) {
  LiftedChannel<S> out;
  out.kind = LiftKind::CompressInput;
  out.factors = {kx};
  out.lifted = Bottleneck<S>::of(tensor_product(kx, Channel<S>::identity(y)));
  return out;
}

template <typename S>
LiftedChannel<S> lift_output_compression(const Channel<S>& ky, const Alphabet& x) {
  LiftedChannel<S> out;
  out.kind = LiftKind::CompressOutput;
  out.factors = {ky};
  out.lifted = Bottleneck<S>::of(tensor_product(Channel<S>::identity(x), ky));
  return out;
}

template <typename S>
LiftedChannel<S> lift_split(const Channel<S>& kx, const Channel<S>& ky) {
  LiftedChannel<S> out;
  out.kind = LiftKind::Split;
  out.factors = {kx, ky};
  out.lifted = Bottleneck<S>::of(tensor_product(kx, ky));
  return out;
}

struct IdentityReport {
  double constraint_lhs = 0.0, constraint_rhs = 0.0;
  double objective_lhs = 0.0, objective_rhs = 0.0;
  double max_discrepancy = 0.0;
  bool pass = false;
};

namespace detail {

// The right-hand sides below are computed by raw summation over the extended
// joint, independent of the channel-algebra path used for the left-hand
// sides. Do not fold these into the info module.
inline double mi2(const std::vector<std::vector<double>>& q) {
  const std::size_t na = q.size(), nb = q[0].size();
  std::vector<double> qa(na, 0.0), qb(nb, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      qa[a] += q[a][b];
      qb[b] += q[a][b];
    }
  double pos = 0.0, neg = 0.0;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      if (q[a][b] <= 0.0) continue;
      const double term = q[a][b] * std::log(q[a][b] / (qa[a] * qb[b]));
      (term >= 0.0 ? pos : neg) += term;
    }
  return pos + neg;
}

inline double entropy1(const std::vector<double>& q) {
  double h = 0.0;
  for (double v : q)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

}  // namespace detail

// Checks the two closed forms for an input-side compression kx against the
// channel-algebra path: the surviving divergence equals I(T;Y), and the
// compression cost equals I(X;T) - I(Y;T) + H(Y), both on the extension
// q(x,y,t) = p(x,y) kx(t|x).
template <typename S>
IdentityReport verify_ib_identities(const Channel<S>& kx, const Joint<S>& j, double tol = 1e-10) {
  if (kx.input() != j.x_alphabet())
    throw DimensionMismatch("verify_ib_identities: kx does not act on X");
  const auto lift = lift_input_compression(kx, j.y_alphabet());

  IdentityReport rep;
  rep.constraint_lhs = iib_constraint(lift.lifted, j).value;
  rep.objective_lhs = iib_objective(lift.lifted, j).value;

  const std::size_t nx = static_cast<std::size_t>(j.x_alphabet().size);
  const std::size_t ny = static_cast<std::size_t>(j.y_alphabet().size);
  const std::size_t nt = static_cast<std::size_t>(kx.output().size);
  std::vector<std::vector<double>> q_ty(nt, std::vector<double>(ny, 0.0));
  std::vector<std::vector<double>> q_xt(nx, std::vector<double>(nt, 0.0));
  std::vector<double> q_y(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const double pxy = to_double(j(static_cast<Index>(x), static_cast<Index>(y)));
      q_y[y] += pxy;
      for (std::size_t t = 0; t < nt; ++t) {
        const double w = pxy * to_double(kx(static_cast<Index>(t), static_cast<Index>(x)));
        q_ty[t][y] += w;
        q_xt[x][t] += w;
      }
    }
  rep.constraint_rhs = detail::mi2(q_ty);
  rep.objective_rhs = detail::mi2(q_xt) - detail::mi2(q_ty) + detail::entropy1(q_y);

  rep.max_discrepancy = std::max(std::abs(rep.constraint_lhs - rep.constraint_rhs),
                                 std::abs(rep.objective_lhs - rep.objective_rhs));
  rep.pass = rep.max_discrepancy <= tol;
  return rep;
}

// Split-compression closed forms on q(x,y,tx,ty) = p(x,y) kx(tx|x) ky(ty|y):
// surviving divergence I(TX;TY), cost I(X;TX) + I(Y;TY) - I(TX;TY).
template <typename S>
IdentityReport verify_sib_identities(const Channel<S>& kx, const Channel<S>& ky,
                                     const Joint<S>& j, double tol = 1e-10) {
  if (kx.input() != j.x_alphabet() || ky.input() != j.y_alphabet())
    throw DimensionMismatch("verify_sib_identities: factor inputs do not match the joint");
  const auto lift = lift_split(kx, ky);

  IdentityReport rep;
  rep.constraint_lhs = iib_constraint(lift.lifted, j).value;
  rep.objective_lhs = iib_objective(lift.lifted, j).value;

  const std::size_t nx = static_cast<std::size_t>(j.x_alphabet().size);
  const std::size_t ny = static_cast<std::size_t>(j.y_alphabet().size);
  const std::size_t ntx = static_cast<std::size_t>(kx.output().size);
  const std::size_t nty = static_cast<std::size_t>(ky.output().size);
  std::vector<std::vector<double>> q_txty(ntx, std::vector<double>(nty, 0.0));
  std::vector<std::vector<double>> q_xtx(nx, std::vector<double>(ntx, 0.0));
  std::vector<std::vector<double>> q_yty(ny, std::vector<double>(nty, 0.0));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const double pxy = to_double(j(static_cast<Index>(x), static_cast<Index>(y)));
      for (std::size_t tx = 0; tx < ntx; ++tx) {
        const double wx = to_double(kx(static_cast<Index>(tx), static_cast<Index>(x)));
        q_xtx[x][tx] += pxy * wx;
        for (std::size_t ty = 0; ty < nty; ++ty)
          q_txty[tx][ty] +=
              pxy * wx * to_double(ky(static_cast<Index>(ty), static_cast<Index>(y)));
      }
      for (std::size_t ty = 0; ty < nty; ++ty)
        q_yty[y][ty] += pxy * to_double(ky(static_cast<Index>(ty), static_cast<Index>(y)));
    }
  rep.constraint_rhs = detail::mi2(q_txty);
  rep.objective_rhs = detail::mi2(q_xtx) + detail::mi2(q_yty) - detail::mi2(q_txty);

  rep.max_discrepancy = std::max(std::abs(rep.constraint_lhs - rep.constraint_rhs),
                                 std::abs(rep.objective_lhs - rep.objective_rhs));
  rep.pass = rep.max_discrepancy <= tol;
  return rep;
}

struct GridOptimumReport {
  double lambda = 0.0;
  double best_compression = 0.0;   // minimal I(X;T) over the feasible grid
  double worst_argmin_relevance = 0.0;  // largest I(Y;T) among grid minimizers
  double grid_modulus = 0.0;       // max adjacent variation of I(Y;T) on the grid
  bool pass = false;
};

// Grid oracle at 2x2 with a binary bottleneck: among channels q(T|X) on a grid
// of the two column parameters, every minimizer of I(X;T) subject to
// I(Y;T) >= lambda sits on the constraint boundary up to the grid modulus.
inline GridOptimumReport check_equality_at_optimum(const Joint<double>& j, double lambda,
                                                   double resolution = 0.01) {
  if (j.x_alphabet().size != 2 || j.y_alphabet().size != 2)
    throw DimensionMismatch("grid oracle is restricted to 2x2 joints");

  const int steps = static_cast<int>(std::lround(1.0 / resolution));
  auto measures = [&](double a, double b) {
    // q(t=0|x=0)=a, q(t=0|x=1)=b
    std::vector<std::vector<double>> q_xt(2, std::vector<double>(2, 0.0));
    std::vector<std::vector<double>> q_yt(2, std::vector<double>(2, 0.0));
    const double px0 = to_double(j.marginal_x()(0)), px1 = to_double(j.marginal_x()(1));
    q_xt[0][0] = px0 * a;
    q_xt[0][1] = px0 * (1.0 - a);
    q_xt[1][0] = px1 * b;
    q_xt[1][1] = px1 * (1.0 - b);
    for (int y = 0; y < 2; ++y) {
      q_yt[y][0] = to_double(j(0, y)) * a + to_double(j(1, y)) * b;
      q_yt[y][1] = to_double(j(0, y)) * (1.0 - a) + to_double(j(1, y)) * (1.0 - b);
    }
    return std::pair<double, double>(detail::mi2(q_xt), detail::mi2(q_yt));
  };

  GridOptimumReport rep;
  rep.lambda = lambda;
  Eigen::MatrixXd ixt(steps + 1, steps + 1), iyt(steps + 1, steps + 1);
  for (int i = 0; i <= steps; ++i)
    for (int k = 0; k <= steps; ++k) {
      const auto [mx, my] = measures(i * resolution, k * resolution);
      ixt(i, k) = mx;
      iyt(i, k) = my;
    }
  for (int i = 0; i <= steps; ++i)
    for (int k = 0; k <= steps; ++k) {
      if (i > 0) rep.grid_modulus = std::max(rep.grid_modulus, std::abs(iyt(i, k) - iyt(i - 1, k)));
      if (k > 0) rep.grid_modulus = std::max(rep.grid_modulus, std::abs(iyt(i, k) - iyt(i, k - 1)));
    }

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i)
    for (int k = 0; k <= steps; ++k)
      if (iyt(i, k) >= lambda - 1e-12) best = std::min(best, ixt(i, k));
  rep.best_compression = best;

  bool ok = std::isfinite(best);
  double worst = 0.0;
  for (int i = 0; i <= steps && ok; ++i)
    for (int k = 0; k <= steps; ++k) {
      if (iyt(i, k) < lambda - 1e-12 || ixt(i, k) > best + 1e-9) continue;
      worst = std::max(worst, iyt(i, k));
      if (iyt(i, k) > lambda + rep.grid_modulus + 1e-9) {
        ok = false;
        break;
      }
    }
  rep.worst_argmin_relevance = worst;
  rep.pass = ok;
  return rep;
}

}  // namespace iib
