#pragma once

#include <utility>

#include "iib/dist.hpp"

namespace iib {

// Conditional probability p(B|A) between finite alphabets, stored as a
// column-stochastic matrix: column a is the output distribution given input a,
// so coefficient (b, a) is p(b|a).
template <typename S>
class Channel {
 public:
  Channel() = default;

  static Channel from_matrix(Alphabet input, Alphabet output, MatX<S> m, bool repair = false) {
    if (m.rows() != output.size || m.cols() != input.size)
      throw DimensionMismatch("channel matrix does not match alphabet sizes");
    for (Index a = 0; a < m.cols(); ++a) {
      for (Index b = 0; b < m.rows(); ++b)
        if (m(b, a) < S(0)) throw InvalidConstruction("negative channel entry");
      S total = m.col(a).sum();
      if (!column_ok(total)) {
        if (!repair || total <= S(0))
          throw InvalidConstruction("channel column does not sum to 1");
        m.col(a) /= total;
      }
    }
    Channel c;
    c.input_ = std::move(input);
    c.output_ = std::move(output);
    c.m_ = std::move(m);
    return c;
  }

  static Channel identity(Alphabet a) {
    MatX<S> m = MatX<S>::Zero(a.size, a.size);
    for (Index i = 0; i < a.size; ++i) m(i, i) = S(1);
    return from_matrix(a, a, std::move(m));
  }

  // Same output distribution in every column.
  static Channel constant(Alphabet input, const Dist<S>& out) {
    MatX<S> m(out.size(), input.size);
    for (Index a = 0; a < input.size; ++a) m.col(a) = out.mass();
    return from_matrix(std::move(input), out.alphabet(), std::move(m));
  }

  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  const MatX<S>& matrix() const { return m_; }
  const S& operator()(Index out, Index in) const { return m_(out, in); }

  Dist<S> column(Index a) const { return Dist<S>::from_mass(output_, m_.col(a), true); }

  bool is_deterministic() const {
    for (Index a = 0; a < m_.cols(); ++a) {
      int ones = 0;
      for (Index b = 0; b < m_.rows(); ++b) {
        if (m_(b, a) == S(1))
          ++ones;
        else if (m_(b, a) != S(0))
          return false;
      }
      if (ones != 1) return false;
    }
    return true;
  }

  Channel<double> to_float() const {
    MatX<double> m(m_.rows(), m_.cols());
    for (Index a = 0; a < m_.cols(); ++a)
      for (Index b = 0; b < m_.rows(); ++b) m(b, a) = to_double(m_(b, a));
    return Channel<double>::from_matrix(input_, output_, std::move(m), true);
  }

 private:
  static bool column_ok(const S& total) {
    if constexpr (scalar_traits<S>::is_exact)
      return total == S(1);
    else
      return std::abs(to_double(total) - 1.0) <= kNormalizationTol;
  }

  Alphabet input_;
  Alphabet output_;
  MatX<S> m_;  // output.size x input.size
};

// Channel from a product space X x Y into a finite bottleneck alphabet T.
template <typename S>
struct Bottleneck {
  Channel<S> base;
  bool deterministic = false;

  static Bottleneck of(Channel<S> ch) {
    const bool det = ch.is_deterministic();
    return Bottleneck{std::move(ch), det};
  }

  Bottleneck<double> to_float() const { return Bottleneck<double>{base.to_float(), deterministic}; }
};

}  // namespace iib
