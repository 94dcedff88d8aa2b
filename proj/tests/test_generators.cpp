#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iib/equivariance.hpp"
#include "iib/generators.hpp"
#include "test_util.hpp"

using namespace iib;

TEST_CASE("circulant construction") {
  VecX<Rational> p(3);
  p << rational(49, 50), rational(1, 100), rational(1, 100);
  const auto prof = Dist<Rational>::from_mass(Alphabet::of_size(3), p);
  const auto ch = circulant_channel<Rational>(3, prof);
  // near-identity circulant: the diagonal carries the large weight
  for (Index i = 0; i < 3; ++i) CHECK(ch(i, i) == rational(49, 50));
  for (Index x = 0; x < 3; ++x) CHECK(ch.matrix().col(x).sum() == Rational(1));

  // shift pairs pass the definitional test for every k, brute force at n = 4
  VecX<Rational> p4(4);
  p4 << rational(2, 5), rational(3, 10), rational(1, 5), rational(1, 10);
  const auto ch4 =
      circulant_channel<Rational>(4, Dist<Rational>::from_mass(Alphabet::of_size(4), p4));
  const Alphabet a4 = Alphabet::of_size(4);
  for (Index k = 0; k < 4; ++k) {
    const auto s = Permutation::cyclic_shift(a4, k);
    CHECK(is_equivariance(ch4, {s, s}));
  }
  // and the exact group is exactly the four shifts for this strictly
  // decreasing asymmetric profile
  CHECK(enumerate_group_exhaustive(ch4).order() == 4);
}

TEST_CASE("circulant profile must be fully supported") {
  VecX<Rational> p(2);
  p << Rational(1), Rational(0);
  CHECK_THROWS_AS(
      circulant_channel<Rational>(2, Dist<Rational>::from_mass(Alphabet::of_size(2), p)),
      InvalidConstruction);
}

TEST_CASE("planted block channel carries its generators") {
  // two identical columns: the planted (swap, e) invariance is present
  const auto planted = planted_block_channel<double>({2}, {1, 1, 1}, 0.6, 41);
  REQUIRE(planted.generators.size() == 1);
  CHECK(planted.generators[0].tau.is_identity());
  CHECK(is_equivariance(planted.channel, planted.generators[0]));

  // blocks {2,1} on X with distinct rows: group order at least 2 at 3x3
  const auto p2 = planted_block_channel<double>({2, 1}, {1, 1, 1}, 0.6, 42);
  for (const auto& g : p2.generators) CHECK(is_equivariance(p2.channel, g));
  CHECK(enumerate_group_exhaustive(p2.channel).order() >= 2);

  // all-singleton blocks: generic channel, trivial group
  const auto p3 = planted_block_channel<double>({1, 1, 1}, {1, 1, 1}, 0.6, 43);
  CHECK(p3.generators.empty());
  CHECK(enumerate_group_exhaustive(p3.channel).order() == 1);
}

TEST_CASE("planted block doubly stochastic is uniformizable and symmetric") {
  const auto planted = planted_block_doubly_stochastic(2, 2, 44);
  const auto& ch = planted.channel;
  for (Index x = 0; x < 4; ++x) CHECK(ch.matrix().col(x).sum() == Rational(1));
  for (Index y = 0; y < 4; ++y) CHECK(ch.matrix().row(y).sum() == Rational(1));
  for (const auto& g : planted.generators) CHECK(is_equivariance(ch, g));
  const auto p = find_uniformizing_input(ch);
  REQUIRE(p.has_value());
}

TEST_CASE("random doubly stochastic mixes stay stochastic both ways") {
  for (int i = 0; i < 5; ++i) {
    const auto ch = random_doubly_stochastic(4, 5, derive_seed(45, static_cast<std::uint64_t>(i)));
    for (Index x = 0; x < 4; ++x) CHECK(ch.matrix().col(x).sum() == Rational(1));
    for (Index y = 0; y < 4; ++y) CHECK(ch.matrix().row(y).sum() == Rational(1));
    for (Index x = 0; x < 4; ++x)
      for (Index y = 0; y < 4; ++y) CHECK(ch(y, x) > 0);
  }
}

TEST_CASE("perturb basics") {
  const auto ch = testutil::bsc_channel().to_float();
  // eps = 0 leaves the channel unchanged
  const auto same = perturb(ch, 0.0, 7);
  CHECK((same.matrix() - ch.matrix()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  // columns stay normalized and support is preserved
  const auto noisy = perturb(ch, 0.3, 7);
  for (Index x = 0; x < 2; ++x)
    CHECK(noisy.matrix().col(x).sum() == doctest::Approx(1.0).epsilon(1e-12));
  for (Index x = 0; x < 2; ++x)
    for (Index y = 0; y < 2; ++y) CHECK(noisy(y, x) > 0.0);
  CHECK_THROWS_AS(perturb(ch, 1.0, 7), InvalidConstruction);
}

TEST_CASE("renormalization moves entries by at most eps/(1-eps)") {
  // bound on the normalized entries relative to the raw perturbed entries
  for (int i = 0; i < 40; ++i) {
    const std::uint64_t s = derive_seed(46, static_cast<std::uint64_t>(i));
    const auto ch = random_channel<double>(3, 4, s);
    const double eps = 0.2;
    const auto noisy = perturb(ch, eps, s + 1);
    // reconstruct the raw perturbed matrix with the same draws
    std::mt19937_64 rng(derive_seed(s + 1, 2));
    MatX<double> raw = ch.matrix();
    for (Index x = 0; x < raw.cols(); ++x)
      for (Index y = 0; y < raw.rows(); ++y) raw(y, x) *= 1.0 + eps * (2.0 * unit_double(rng) - 1.0);
    const double bound = eps / (1.0 - eps) + 1e-12;
    for (Index x = 0; x < raw.cols(); ++x)
      for (Index y = 0; y < raw.rows(); ++y)
        CHECK(std::abs(noisy(y, x) / raw(y, x) - 1.0) <= bound);
  }
}

TEST_CASE("random joints are valid and seed-sensitive") {
  const auto j1 = random_joint<double>(3, 4, 1);
  const auto j2 = random_joint<double>(3, 4, 2);
  CHECK(j1.fully_supported());
  CHECK(j1.marginal_x().fully_supported());
  CHECK(j1.marginal_y().fully_supported());
  CHECK(std::abs(j1.table().sum() - 1.0) <= 1e-12);
  CHECK((j1.table() - j2.table()).cwiseAbs().maxCoeff() > 0.0);
  // identical seeds reproduce identical tables
  const auto j3 = random_joint<double>(3, 4, 1);
  CHECK((j1.table() - j3.table()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  const auto je = random_joint<Rational>(2, 2, 3);
  CHECK(je.table().sum() == Rational(1));
  CHECK(je.fully_supported());
}

TEST_CASE("random channels are valid in both modes") {
  const auto cf = random_channel<double>(3, 4, 4);
  for (Index x = 0; x < 3; ++x)
    CHECK(cf.matrix().col(x).sum() == doctest::Approx(1.0).epsilon(1e-12));
  const auto ce = random_channel<Rational>(3, 4, 5);
  for (Index x = 0; x < 3; ++x) CHECK(ce.matrix().col(x).sum() == Rational(1));
}

TEST_CASE("near identity channel matches its closed form") {
  const auto ch = near_identity_channel<Rational>(4, rational(1, 100));
  for (Index i = 0; i < 4; ++i) CHECK(ch(i, i) == rational(97, 100));
  CHECK(ch.matrix().col(0).sum() == Rational(1));
}
