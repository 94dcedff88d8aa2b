#pragma once

#include <utility>

#include "iib/channel.hpp"
#include "iib/dist.hpp"

namespace iib {

// Full joint p(X,Y) with cached marginals and a support mask. The table is
// |X| x |Y|, entry (x, y) = p(x, y).
template <typename S>
class Joint {
 public:
  Joint() = default;

  static Joint from_table(Alphabet x, Alphabet y, MatX<S> table, bool repair = false,
                          double support_eps = kSupportEpsilon) {
    if (table.rows() != x.size || table.cols() != y.size)
      throw DimensionMismatch("joint table does not match alphabet sizes");
    for (Index i = 0; i < table.rows(); ++i)
      for (Index j = 0; j < table.cols(); ++j)
        if (table(i, j) < S(0)) throw InvalidConstruction("negative joint entry");
    S total = table.sum();
    if (!sum_ok(total)) {
      if (!repair || total <= S(0)) throw InvalidConstruction("joint does not sum to 1");
      table /= total;
    }
    Joint j;
    j.x_ = std::move(x);
    j.y_ = std::move(y);
    j.table_ = std::move(table);
    j.support_eps_ = support_eps;
    j.mx_ = j.table_.rowwise().sum();
    j.my_ = j.table_.colwise().sum().transpose();
    j.support_ = BoolMask(j.table_.rows(), j.table_.cols());
    for (Index i = 0; i < j.table_.rows(); ++i)
      for (Index jj = 0; jj < j.table_.cols(); ++jj)
        j.support_(i, jj) = positive(j.table_(i, jj), support_eps);
    return j;
  }

  // p(x, y) = p(x) * ch(y|x).
  static Joint from_input_and_channel(const Dist<S>& px, const Channel<S>& ch,
                                      double support_eps = kSupportEpsilon) {
    if (px.alphabet() != ch.input()) throw DimensionMismatch("input dist does not match channel");
    MatX<S> t(px.size(), ch.output().size);
    for (Index x = 0; x < px.size(); ++x)
      for (Index y = 0; y < ch.output().size; ++y) t(x, y) = px(x) * ch(y, x);
    return from_table(px.alphabet(), ch.output(), std::move(t), true, support_eps);
  }

  const Alphabet& x_alphabet() const { return x_; }
  const Alphabet& y_alphabet() const { return y_; }
  const MatX<S>& table() const { return table_; }
  const S& operator()(Index x, Index y) const { return table_(x, y); }
  double support_epsilon() const { return support_eps_; }

  Dist<S> marginal_x() const { return Dist<S>::from_mass(x_, mx_, true); }
  Dist<S> marginal_y() const { return Dist<S>::from_mass(y_, my_, true); }

  const BoolMask& support() const { return support_; }
  bool in_support(Index x, Index y) const { return support_(x, y); }
  bool fully_supported() const { return support_.all(); }
  bool marginals_fully_supported() const {
    for (Index x = 0; x < mx_.size(); ++x)
      if (!positive(mx_(x), support_eps_)) return false;
    for (Index y = 0; y < my_.size(); ++y)
      if (!positive(my_(y), support_eps_)) return false;
    return true;
  }

  // The joint flattened to a Dist over the product alphabet, index x*|Y|+y.
  Dist<S> as_product_dist() const {
    VecX<S> v(x_.size * y_.size);
    for (Index x = 0; x < x_.size; ++x)
      for (Index y = 0; y < y_.size; ++y) v(pair_index(x, y, y_.size)) = table_(x, y);
    return Dist<S>::from_mass(product_alphabet(x_, y_), std::move(v), true);
  }

  // p(x)p(y) flattened the same way.
  Dist<S> marginal_product_dist() const {
    VecX<S> v(x_.size * y_.size);
    for (Index x = 0; x < x_.size; ++x)
      for (Index y = 0; y < y_.size; ++y) v(pair_index(x, y, y_.size)) = mx_(x) * my_(y);
    return Dist<S>::from_mass(product_alphabet(x_, y_), std::move(v), true);
  }

  Joint<double> to_float() const {
    MatX<double> t(table_.rows(), table_.cols());
    for (Index i = 0; i < table_.rows(); ++i)
      for (Index j = 0; j < table_.cols(); ++j) t(i, j) = to_double(table_(i, j));
    return Joint<double>::from_table(x_, y_, std::move(t), true, support_eps_);
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

  Alphabet x_, y_;
  MatX<S> table_;
  VecX<S> mx_, my_;
  BoolMask support_;
  double support_eps_ = kSupportEpsilon;
};

}  // namespace iib
