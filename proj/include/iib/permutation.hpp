#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "iib/alphabet.hpp"
#include "iib/errors.hpp"

namespace iib {

// Bijection of {0..n-1}. map_[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(Alphabet a) {
    std::vector<Index> m(static_cast<std::size_t>(a.size));
    std::iota(m.begin(), m.end(), Index{0});
    return Permutation(std::move(a), std::move(m));
  }

  static Permutation from_map(Alphabet a, std::vector<Index> map) {
    if (static_cast<Index>(map.size()) != a.size)
      throw InvalidConstruction("permutation map does not match alphabet size");
    std::vector<bool> seen(map.size(), false);
    for (Index v : map) {
      if (v < 0 || v >= a.size || seen[static_cast<std::size_t>(v)])
        throw InvalidConstruction("permutation map is not a bijection");
      seen[static_cast<std::size_t>(v)] = true;
    }
    return Permutation(std::move(a), std::move(map));
  }

  // i -> (i + k) mod n
  static Permutation cyclic_shift(Alphabet a, Index k) {
    std::vector<Index> m(static_cast<std::size_t>(a.size));
    for (Index i = 0; i < a.size; ++i) m[static_cast<std::size_t>(i)] = (i + k) % a.size;
    return Permutation(std::move(a), std::move(m));
  }

  static Permutation transposition(Alphabet a, Index i, Index j) {
    Permutation p = identity(std::move(a));
    std::swap(p.map_[static_cast<std::size_t>(i)], p.map_[static_cast<std::size_t>(j)]);
    return p;
  }

  const Alphabet& alphabet() const { return alphabet_; }
  Index size() const { return alphabet_.size; }
  Index operator()(Index i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& map() const { return map_; }

  bool is_identity() const {
    for (Index i = 0; i < size(); ++i)
      if ((*this)(i) != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Index> inv(map_.size());
    for (Index i = 0; i < size(); ++i) inv[static_cast<std::size_t>((*this)(i))] = i;
    return Permutation(alphabet_, std::move(inv));
  }

  // f after g: result(i) = f(g(i))
  friend Permutation compose(const Permutation& f, const Permutation& g) {
    if (f.alphabet() != g.alphabet()) throw DimensionMismatch("permutation compose mismatch");
    std::vector<Index> m(f.map_.size());
    for (Index i = 0; i < f.size(); ++i) m[static_cast<std::size_t>(i)] = f(g(i));
    return Permutation(f.alphabet_, std::move(m));
  }

  // "(0 2 1)(3 4)"; fixed points omitted, identity printed as "e".
  std::string cycle_notation() const {
    std::string out;
    std::vector<bool> seen(map_.size(), false);
    for (Index i = 0; i < size(); ++i) {
      if (seen[static_cast<std::size_t>(i)] || (*this)(i) == i) continue;
      out += "(";
      Index j = i;
      bool first = true;
      while (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        if (!first) out += " ";
        out += alphabet_.label(j);
        first = false;
        j = (*this)(j);
      }
      out += ")";
    }
    return out.empty() ? "e" : out;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.map_ == b.map_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.map_ < b.map_; }

 private:
  Permutation(Alphabet a, std::vector<Index> m) : alphabet_(std::move(a)), map_(std::move(m)) {}

  Alphabet alphabet_;
  std::vector<Index> map_;
};

// Pair of deterministic permutations acting on the input and output sides of
// a channel.
struct EquivariancePair {
  Permutation sigma;  // over X
  Permutation tau;    // over Y

  static EquivariancePair identity(const Alphabet& x, const Alphabet& y) {
    return {Permutation::identity(x), Permutation::identity(y)};
  }
  EquivariancePair inverse() const { return {sigma.inverse(), tau.inverse()}; }

  // componentwise product: a * b = (a.sigma o b.sigma, a.tau o b.tau)
  friend EquivariancePair compose(const EquivariancePair& a, const EquivariancePair& b) {
    return {compose(a.sigma, b.sigma), compose(a.tau, b.tau)};
  }
  friend bool operator==(const EquivariancePair& a, const EquivariancePair& b) {
    return a.sigma == b.sigma && a.tau == b.tau;
  }
  friend bool operator<(const EquivariancePair& a, const EquivariancePair& b) {
    if (a.sigma.map() != b.sigma.map()) return a.sigma.map() < b.sigma.map();
    return a.tau.map() < b.tau.map();
  }
};

}  // namespace iib
