#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "iib/joint.hpp"
#include "iib/ops.hpp"

namespace iib {

// Information measured in natural-log units. Infinite values (KL with a
// support violation) carry an explicit flag rather than a sentinel float.
struct Nats {
  double value = 0.0;
  bool infinite = false;

  static Nats finite(double v) { return Nats{v, false}; }
  static Nats infinity() { return Nats{std::numeric_limits<double>::infinity(), true}; }
};

namespace detail {

// Float-mode sums accumulate positive and negative log-ratio terms separately.
struct SignedAccumulator {
  double pos = 0.0, neg = 0.0;
  void add(double term) { (term >= 0.0 ? pos : neg) += term; }
  double total() const { return pos + neg; }
};

template <typename S>
bool is_zero(const S& v) {
  if constexpr (scalar_traits<S>::is_exact)
    return v == S(0);
  else
    return v == 0.0;
}

}  // namespace detail

// sum_a p(a) log(p(a)/q(a)), with 0*log(0/0) = 0; infinite when p(a) > 0 and
// q(a) = 0.
template <typename S>
Nats kl_divergence(const Dist<S>& p, const Dist<S>& q) {
  if (p.alphabet() != q.alphabet()) throw DimensionMismatch("kl_divergence: alphabet mismatch");
  detail::SignedAccumulator acc;
  for (Index a = 0; a < p.size(); ++a) {
    if (detail::is_zero(p(a))) continue;
    if (detail::is_zero(q(a))) return Nats::infinity();
    const double pa = to_double(p(a));
    acc.add(pa * std::log(to_double(p(a)) / to_double(q(a))));
  }
  return Nats::finite(acc.total());
}

template <typename S>
Nats entropy(const Dist<S>& p) {
  double h = 0.0;
  for (Index a = 0; a < p.size(); ++a) {
    if (detail::is_zero(p(a))) continue;
    const double pa = to_double(p(a));
    h -= pa * std::log(pa);
  }
  return Nats::finite(h);
}

// I(X;Y) = D(p(X,Y) || p(X)p(Y)), summed directly over the support.
template <typename S>
Nats mutual_information(const Joint<S>& j) {
  detail::SignedAccumulator acc;
  const auto px = j.marginal_x().mass();
  const auto py = j.marginal_y().mass();
  for (Index x = 0; x < j.x_alphabet().size; ++x)
    for (Index y = 0; y < j.y_alphabet().size; ++y) {
      if (!j.in_support(x, y)) continue;
      const double pxy = to_double(j(x, y));
      acc.add(pxy * std::log(pxy / (to_double(px(x)) * to_double(py(y)))));
    }
  return Nats::finite(acc.total());
}

// D(kappa(p(X,Y)) || kappa(p(X)p(Y))): how much of the joint-vs-product
// divergence survives the compression kappa.
template <typename S>
Nats iib_constraint(const Channel<S>& kappa, const Joint<S>& j) {
  if (kappa.input().size != j.x_alphabet().size * j.y_alphabet().size)
    throw DimensionMismatch("iib_constraint: kappa input is not X x Y");
  return kl_divergence(pushforward(kappa, j.as_product_dist()),
                       pushforward(kappa, j.marginal_product_dist()));
}

// Mutual information between (X,Y) and T under p(x,y) * kappa(t|x,y).
template <typename S>
Nats iib_objective(const Channel<S>& kappa, const Joint<S>& j) {
  if (kappa.input().size != j.x_alphabet().size * j.y_alphabet().size)
    throw DimensionMismatch("iib_objective: kappa input is not X x Y");
  const Dist<S> p = j.as_product_dist();
  const Dist<S> qt = pushforward(kappa, p);
  detail::SignedAccumulator acc;
  for (Index a = 0; a < p.size(); ++a) {
    if (detail::is_zero(p(a))) continue;
    for (Index t = 0; t < qt.size(); ++t) {
      if (detail::is_zero(kappa(t, a))) continue;
      const double w = to_double(p(a)) * to_double(kappa(t, a));
      acc.add(w * std::log(to_double(kappa(t, a)) / to_double(qt(t))));
    }
  }
  return Nats::finite(acc.total());
}

template <typename S>
Nats iib_constraint(const Bottleneck<S>& kappa, const Joint<S>& j) {
  return iib_constraint(kappa.base, j);
}
template <typename S>
Nats iib_objective(const Bottleneck<S>& kappa, const Joint<S>& j) {
  return iib_objective(kappa.base, j);
}

inline double nats_to_bits(double nats) { return nats / std::log(2.0); }

// ---------------------------------------------------------------------------
// Exact-mode values of the form sum_i coeff_i * ln(ratio_i).
//
// The canonical form merges terms with equal ratio and drops zero coefficients
// and unit ratios. Equal canonical forms imply equal real values; the partition
// and optimum checks only ever compare sums that, when equal as reals, regroup
// into the same canonical form, so == is a sound and complete equality test
// there.
class ExactLogSum {
 public:
  ExactLogSum() = default;

  static ExactLogSum infinite_sum() {
    ExactLogSum s;
    s.infinite_ = true;
    return s;
  }

  static ExactLogSum from_terms(std::vector<std::pair<Rational, Rational>> raw) {
    std::map<Rational, Rational> merged;
    for (auto& [ratio, coeff] : raw) merged[ratio] += coeff;
    ExactLogSum s;
    for (auto& [ratio, coeff] : merged) {
      if (coeff == 0 || ratio == 1) continue;
      s.terms_.emplace_back(ratio, coeff);
    }
    return s;
  }

  bool infinite() const { return infinite_; }
  const std::vector<std::pair<Rational, Rational>>& terms() const { return terms_; }

  double value() const {
    if (infinite_) return std::numeric_limits<double>::infinity();
    detail::SignedAccumulator acc;
    for (const auto& [ratio, coeff] : terms_) acc.add(to_double(coeff) * std::log(to_double(ratio)));
    return acc.total();
  }

  friend bool operator==(const ExactLogSum& a, const ExactLogSum& b) {
    return a.infinite_ == b.infinite_ && a.terms_ == b.terms_;
  }

 private:
  bool infinite_ = false;
  std::vector<std::pair<Rational, Rational>> terms_;  // (ratio, coeff), ratio-sorted
};

inline ExactLogSum exact_kl_terms(const Dist<Rational>& p, const Dist<Rational>& q) {
  if (p.alphabet() != q.alphabet()) throw DimensionMismatch("exact_kl_terms: alphabet mismatch");
  std::vector<std::pair<Rational, Rational>> raw;
  for (Index a = 0; a < p.size(); ++a) {
    if (p(a) == 0) continue;
    if (q(a) == 0) return ExactLogSum::infinite_sum();
    raw.emplace_back(p(a) / q(a), p(a));
  }
  return ExactLogSum::from_terms(std::move(raw));
}

inline ExactLogSum exact_entropy_terms(const Dist<Rational>& p) {
  std::vector<std::pair<Rational, Rational>> raw;
  for (Index a = 0; a < p.size(); ++a)
    if (p(a) != 0) raw.emplace_back(1 / p(a), p(a));
  return ExactLogSum::from_terms(std::move(raw));
}

inline ExactLogSum exact_mutual_information_terms(const Joint<Rational>& j) {
  return exact_kl_terms(j.as_product_dist(), j.marginal_product_dist());
}

inline ExactLogSum exact_iib_constraint_terms(const Channel<Rational>& kappa,
                                              const Joint<Rational>& j) {
  return exact_kl_terms(pushforward(kappa, j.as_product_dist()),
                        pushforward(kappa, j.marginal_product_dist()));
}

inline ExactLogSum exact_iib_objective_terms(const Channel<Rational>& kappa,
                                             const Joint<Rational>& j) {
  const Dist<Rational> p = j.as_product_dist();
  const Dist<Rational> qt = pushforward(kappa, p);
  std::vector<std::pair<Rational, Rational>> raw;
  for (Index a = 0; a < p.size(); ++a) {
    if (p(a) == 0) continue;
    for (Index t = 0; t < qt.size(); ++t) {
      if (kappa(t, a) == 0) continue;
      raw.emplace_back(kappa(t, a) / qt(t), p(a) * kappa(t, a));
    }
  }
  return ExactLogSum::from_terms(std::move(raw));
}

}  // namespace iib
