#pragma once

#include <random>
#include <vector>

#include "iib/joint.hpp"
#include "iib/ops.hpp"
#include "iib/permutation.hpp"

namespace iib {

// Streams derived from (seed, index) stay reproducible regardless of how work
// is scheduled. splitmix64 step keeps distinct indices well separated.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// mt19937_64 is fully specified by the standard; these draws avoid the
// library-defined std distributions so seeded output is identical everywhere.
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}
inline long uniform_long(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// ch(y|x) = profile((y - x) mod n). Doubly stochastic, so the uniform input
// already uniformizes the output.
template <typename S>
Channel<S> circulant_channel(Index n, const Dist<S>& profile) {
  if (n < 2) throw InvalidConstruction("circulant channels need at least 2 symbols");
  if (profile.size() != n) throw DimensionMismatch("circulant profile size mismatch");
  if (!profile.fully_supported()) throw InvalidConstruction("circulant profile must be fully supported");
  MatX<S> m(n, n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) m(y, x) = profile(((y - x) % n + n) % n);
  Alphabet a = Alphabet::of_size(n);
  return Channel<S>::from_matrix(a, a, std::move(m));
}

// Circulant with a point-like profile: 1-(n-1)*eps on the diagonal, eps off.
template <typename S>
Channel<S> near_identity_channel(Index n, const S& eps) {
  VecX<S> p(n);
  p(0) = S(1) - S(n - 1) * eps;
  for (Index i = 1; i < n; ++i) p(i) = eps;
  return circulant_channel<S>(n, Dist<S>::from_mass(Alphabet::of_size(n), std::move(p)));
}

template <typename S>
struct PlantedBlock {
  Channel<S> channel;
  std::vector<EquivariancePair> generators;  // planted block-wise swaps
};

namespace detail {

inline std::vector<Index> block_of(const std::vector<Index>& blocks) {
  std::vector<Index> owner;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Index i = 0; i < blocks[b]; ++i) owner.push_back(static_cast<Index>(b));
  return owner;
}

// Adjacent transpositions within each block of the given side.
inline void append_block_swaps(const std::vector<Index>& blocks, const Alphabet& x,
                               const Alphabet& y, bool on_x,
                               std::vector<EquivariancePair>& out) {
  Index base = 0;
  for (Index size : blocks) {
    for (Index i = 0; i + 1 < size; ++i) {
      if (on_x)
        out.push_back({Permutation::transposition(x, base + i, base + i + 1),
                       Permutation::identity(y)});
      else
        out.push_back({Permutation::identity(x),
                       Permutation::transposition(y, base + i, base + i + 1)});
    }
    base += size;
  }
}

}  // namespace detail

// Channel constant on the rectangles blocks_x x blocks_y: columns inside an X
// block are duplicates and rows inside a Y block are duplicates, so the
// block-wise swaps are equivariances by construction. `spread` controls how
// distinct the block values are (0 gives the constant channel).
template <typename S>
PlantedBlock<S> planted_block_channel(const std::vector<Index>& blocks_x,
                                      const std::vector<Index>& blocks_y, double spread,
                                      std::uint64_t seed) {
  const auto owner_x = detail::block_of(blocks_x);
  const auto owner_y = detail::block_of(blocks_y);
  const Index nx = static_cast<Index>(owner_x.size());
  const Index ny = static_cast<Index>(owner_y.size());
  if (nx < 1 || ny < 1) throw InvalidConstruction("empty block structure");

  std::mt19937_64 rng(derive_seed(seed, 0));
  MatX<S> base(static_cast<Index>(blocks_y.size()), static_cast<Index>(blocks_x.size()));
  for (Index i = 0; i < base.rows(); ++i)
    for (Index j = 0; j < base.cols(); ++j) {
      const long u = uniform_long(rng, 0, 999);
      if constexpr (scalar_traits<S>::is_exact)
        base(i, j) = 1 + rational(static_cast<long>(1000.0 * spread), 1000) * rational(u, 1000);
      else
        base(i, j) = 1.0 + spread * (u / 1000.0);
    }

  MatX<S> m(ny, nx);
  for (Index x = 0; x < nx; ++x)
    for (Index y = 0; y < ny; ++y) m(y, x) = base(owner_y[y], owner_x[x]);
  for (Index x = 0; x < nx; ++x) m.col(x) /= m.col(x).sum();

  PlantedBlock<S> out;
  Alphabet ax = Alphabet::of_size(nx), ay = Alphabet::of_size(ny);
  out.channel = Channel<S>::from_matrix(ax, ay, std::move(m));
  detail::append_block_swaps(blocks_x, ax, ay, true, out.generators);
  detail::append_block_swaps(blocks_y, ax, ay, false, out.generators);
  return out;
}

// Convex mix of `count` random permutation matrices plus a uniform share, so
// the result is doubly stochastic, fully supported, and exactly rational.
inline Channel<Rational> random_doubly_stochastic(Index n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 1));
  MatX<Rational> m(n, n);
  m.setConstant(Rational(0));
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (int k = 0; k < count; ++k) {
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) {
      const Index pick = static_cast<Index>(uniform_long(rng, 0, i));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick)]);
    }
    for (Index i = 0; i < n; ++i) m(perm[static_cast<std::size_t>(i)], i) += 1;
  }
  const Rational w = rational(1, 5);  // uniform share keeps full support
  const Rational scale = (1 - w) / count;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = m(i, j) * scale + w / n;
  Alphabet a = Alphabet::of_size(n);
  return Channel<Rational>::from_matrix(a, a, std::move(m));
}

// Equal-size blocks over a doubly stochastic base, so the channel is both
// block-symmetric and uniformizable by the uniform input.
inline PlantedBlock<Rational> planted_block_doubly_stochastic(Index block_size, Index block_count,
                                                              std::uint64_t seed) {
  Channel<Rational> base = random_doubly_stochastic(block_count, 4, seed);
  const Index n = block_size * block_count;
  MatX<Rational> m(n, n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      m(y, x) = base(y / block_size, x / block_size) / block_size;
  PlantedBlock<Rational> out;
  Alphabet a = Alphabet::of_size(n);
  out.channel = Channel<Rational>::from_matrix(a, a, std::move(m));
  std::vector<Index> blocks(static_cast<std::size_t>(block_count), block_size);
  detail::append_block_swaps(blocks, a, a, true, out.generators);
  detail::append_block_swaps(blocks, a, a, false, out.generators);
  return out;
}

// Entrywise multiplicative noise e -> e * (1 + eps * u), u uniform in [-1, 1],
// columns renormalized. Preserves full support for eps < 1.
inline Channel<double> perturb(const Channel<double>& ch, double epsilon, std::uint64_t seed) {
  if (epsilon < 0.0 || epsilon >= 1.0) throw InvalidConstruction("perturb: eps must be in [0,1)");
  std::mt19937_64 rng(derive_seed(seed, 2));
  MatX<double> m = ch.matrix();
  for (Index x = 0; x < m.cols(); ++x)
    for (Index y = 0; y < m.rows(); ++y) m(y, x) *= 1.0 + epsilon * (2.0 * unit_double(rng) - 1.0);
  return Channel<double>::from_matrix(ch.input(), ch.output(), std::move(m), true);
}

// Fully supported random joint. Exact mode draws numerators in 1..999 over a
// fixed denominator of 1000 before normalizing.
template <typename S>
Joint<S> random_joint(Index nx, Index ny, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 3));
  MatX<S> t(nx, ny);
  if constexpr (scalar_traits<S>::is_exact) {
    for (Index x = 0; x < nx; ++x)
      for (Index y = 0; y < ny; ++y) t(x, y) = rational(uniform_long(rng, 1, 999), 1000);
  } else {
    for (Index x = 0; x < nx; ++x)
      for (Index y = 0; y < ny; ++y) t(x, y) = 0.05 + 0.95 * unit_double(rng);
  }
  return Joint<S>::from_table(Alphabet::of_size(nx), Alphabet::of_size(ny), std::move(t), true);
}

template <typename S>
Channel<S> random_channel(Index nx, Index ny, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 4));
  MatX<S> m(ny, nx);
  if constexpr (scalar_traits<S>::is_exact) {
    for (Index x = 0; x < nx; ++x)
      for (Index y = 0; y < ny; ++y) m(y, x) = rational(uniform_long(rng, 1, 999), 1000);
  } else {
    for (Index x = 0; x < nx; ++x)
      for (Index y = 0; y < ny; ++y) m(y, x) = 0.05 + 0.95 * unit_double(rng);
  }
  return Channel<S>::from_matrix(Alphabet::of_size(nx), Alphabet::of_size(ny), std::move(m), true);
}

}  // namespace iib
