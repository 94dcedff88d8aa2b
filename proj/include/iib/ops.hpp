#pragma once

#include "iib/channel.hpp"
#include "iib/joint.hpp"
#include "iib/permutation.hpp"

namespace iib {

// result(c|a) = sum_b f(c|b) g(b|a)
template <typename S>
Channel<S> compose(const Channel<S>& f, const Channel<S>& g) {
  if (f.input() != g.output()) throw DimensionMismatch("compose: inner alphabets differ");
  MatX<S> m = f.matrix() * g.matrix();
  return Channel<S>::from_matrix(g.input(), f.output(), std::move(m), true);
}

// result(x',y' | x,y) = mu(x'|x) * eta(y'|y), with product indices x*|Y|+y.
template <typename S>
Channel<S> tensor_product(const Channel<S>& mu, const Channel<S>& eta) {
  const Index nxi = mu.input().size, nyi = eta.input().size;
  const Index nxo = mu.output().size, nyo = eta.output().size;
  MatX<S> m(nxo * nyo, nxi * nyi);
  for (Index x = 0; x < nxi; ++x)
    for (Index y = 0; y < nyi; ++y)
      for (Index xo = 0; xo < nxo; ++xo)
        for (Index yo = 0; yo < nyo; ++yo)
          m(pair_index(xo, yo, nyo), pair_index(x, y, nyi)) = mu(xo, x) * eta(yo, y);
  return Channel<S>::from_matrix(product_alphabet(mu.input(), eta.input()),
                                 product_alphabet(mu.output(), eta.output()), std::move(m), true);
}

template <typename S>
Dist<S> pushforward(const Channel<S>& k, const Dist<S>& p) {
  if (k.input() != p.alphabet()) throw DimensionMismatch("pushforward: alphabet mismatch");
  VecX<S> v = k.matrix() * p.mass();
  return Dist<S>::from_mass(k.output(), std::move(v), true);
}

// Deterministic 0/1 column-stochastic matrix of a permutation.
template <typename S>
Channel<S> permutation_channel(const Permutation& s) {
  MatX<S> m = MatX<S>::Zero(s.size(), s.size());
  for (Index a = 0; a < s.size(); ++a) m(s(a), a) = S(1);
  return Channel<S>::from_matrix(s.alphabet(), s.alphabet(), std::move(m));
}

}  // namespace iib
