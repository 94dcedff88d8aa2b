#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace Eigen {

// Dense-expression support for exact rational scalars.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = long;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace iib {

using Index = Eigen::Index;

// Probability values come in two numeric modes. Float mode is IEEE double with
// tolerance-based comparison; Exact mode is arbitrary-precision rational with
// true equality and rounding-free arithmetic. The mode is the scalar type of
// the container, so mixing modes does not compile; `to_float` on the container
// types is the explicit downcast.
using Rational = mpq_class;

template <typename S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
using BoolMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static const char* mode_name() { return "float"; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static const char* mode_name() { return "exact"; }
};

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Float comparisons always go through an explicit tolerance; Exact mode
// ignores the tolerance and compares exactly.
inline bool approx_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}
inline bool approx_equal(const Rational& a, const Rational& b, double /*tol*/) {
  return a == b;
}

inline double abs_value(double v) { return std::abs(v); }
inline Rational abs_value(const Rational& v) { return abs(v); }

// Accepts "num/den" or a bare integer.
inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Rational r{mpz_class(s)};
      return r;
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

inline std::string format_rational(const Rational& r) { return r.get_str(); }

// Absolute tolerance on Float-mode column/mass sums.
inline constexpr double kNormalizationTol = 1e-12;
// Float-mode entries at or below this count as structural zeros.
inline constexpr double kSupportEpsilon = 1e-12;

}  // namespace iib
