#pragma once

#include <utility>

#include "iib/alphabet.hpp"
#include "iib/errors.hpp"
#include "iib/scalar.hpp"

namespace iib {

// Probability mass vector over a finite alphabet. Entries are nonnegative and
// sum to one (exactly in Exact mode, within kNormalizationTol in Float mode).
template <typename S>
class Dist {
 public:
  Dist() = default;

  // `repair` rescales by the total mass instead of rejecting an off-by-epsilon
  // sum; negative entries are always rejected.
  static Dist from_mass(Alphabet alphabet, VecX<S> mass, bool repair = false) {
    if (mass.size() != alphabet.size)
      throw DimensionMismatch("mass vector does not match alphabet size");
    for (Index i = 0; i < mass.size(); ++i)
      if (mass(i) < S(0)) throw InvalidConstruction("negative probability entry");
    S total = mass.sum();
    if (!sum_ok(total)) {
      if (!repair || total <= S(0)) throw InvalidConstruction("mass does not sum to 1");
      mass /= total;
    }
    Dist d;
    d.alphabet_ = std::move(alphabet);
    d.mass_ = std::move(mass);
    return d;
  }

  static Dist uniform(Alphabet alphabet) {
    VecX<S> m(alphabet.size);
    if constexpr (scalar_traits<S>::is_exact) {
      m.setConstant(rational(1, alphabet.size));
    } else {
      m.setConstant(1.0 / static_cast<double>(alphabet.size));
    }
    return from_mass(std::move(alphabet), std::move(m), true);
  }

  static Dist point_mass(Alphabet alphabet, Index at) {
    if (at < 0 || at >= alphabet.size) throw InvalidConstruction("point mass out of range");
    VecX<S> m = VecX<S>::Zero(alphabet.size);
    m(at) = S(1);
    return from_mass(std::move(alphabet), std::move(m));
  }

  const Alphabet& alphabet() const { return alphabet_; }
  Index size() const { return alphabet_.size; }
  const VecX<S>& mass() const { return mass_; }
  const S& operator()(Index i) const { return mass_(i); }

  bool fully_supported(double eps = kSupportEpsilon) const {
    for (Index i = 0; i < mass_.size(); ++i)
      if (!positive(mass_(i), eps)) return false;
    return true;
  }

  Dist<double> to_float() const {
    VecX<double> m(mass_.size());
    for (Index i = 0; i < mass_.size(); ++i) m(i) = to_double(mass_(i));
    return Dist<double>::from_mass(alphabet_, std::move(m), true);
  }

 private:
  static bool sum_ok(const S& total) {
    if constexpr (scalar_traits<S>::is_exact)
      return total == S(1);
    else
      return std::abs(to_double(total) - 1.0) <= kNormalizationTol;
  }
  static bool positive(const S& v, double eps) {
    if constexpr (scalar_traits<S>::is_exact)
      return v > S(0);
    else
      return v > eps;
  }

  Alphabet alphabet_;
  VecX<S> mass_;
};

}  // namespace iib
