#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

namespace iib {

// Euclidean projection onto the probability simplex (sort-based).
inline Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  std::vector<double> s(v.data(), v.data() + n);
  std::sort(s.begin(), s.end(), std::greater<double>());
  double cumulative = 0.0, theta = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    cumulative += s[static_cast<std::size_t>(i)];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (s[static_cast<std::size_t>(i)] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).max(0.0);
}

// min ||A z - b||^2 over the probability simplex, projected gradient with
// Nesterov momentum and a step from the Lipschitz bound of the quadratic.
inline Eigen::VectorXd simplex_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                             Eigen::VectorXd z0, int max_iters = 500) {
  const Eigen::MatrixXd gram = a.transpose() * a;
  const Eigen::VectorXd atb = a.transpose() * b;
  double lipschitz = gram.operatorNorm();
  if (!(lipschitz > 0.0)) return project_to_simplex(z0);
  const double step = 1.0 / lipschitz;

  Eigen::VectorXd z = project_to_simplex(z0);
  Eigen::VectorXd y = z;
  double t = 1.0;
  for (int it = 0; it < max_iters; ++it) {
    const Eigen::VectorXd grad = gram * y - atb;
    Eigen::VectorXd z_next = project_to_simplex(y - step * grad);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = z_next + ((t - 1.0) / t_next) * (z_next - z);
    const double delta = (z_next - z).template lpNorm<Eigen::Infinity>();
    z = std::move(z_next);
    t = t_next;
    if (delta < 1e-14) break;
  }
  return z;
}

}  // namespace iib
