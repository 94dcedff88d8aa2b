#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iib/generators.hpp"
#include "iib/ops.hpp"
#include "test_util.hpp"

using namespace iib;

TEST_CASE("alphabet basics and the product index convention") {
  CHECK_THROWS_AS(Alphabet::of_size(0), InvalidConstruction);
  CHECK_THROWS_AS(Alphabet::with_labels({"a", "a"}), InvalidConstruction);
  const Alphabet x = Alphabet::of_size(3), y = Alphabet::of_size(4);
  CHECK(product_alphabet(x, y).size == 12);
  CHECK(pair_index(2, 3, 4) == 11);
  CHECK(pair_index(0, 1, 4) == 1);
}

TEST_CASE("dist constructors validate and repair") {
  const Alphabet a = Alphabet::of_size(2);
  VecX<double> neg(2);
  neg << -0.1, 1.1;
  CHECK_THROWS_AS(Dist<double>::from_mass(a, neg), InvalidConstruction);
  VecX<double> off(2);
  off << 0.5, 0.6;
  CHECK_THROWS_AS(Dist<double>::from_mass(a, off), InvalidConstruction);
  const auto repaired = Dist<double>::from_mass(a, off, true);
  CHECK(repaired(0) == doctest::Approx(0.5 / 1.1));
  // exact uniform sums to exactly one
  const auto u = Dist<Rational>::uniform(Alphabet::of_size(7));
  CHECK(u.mass().sum() == Rational(1));
}

TEST_CASE("channel constructors validate columns") {
  const Alphabet a = Alphabet::of_size(2);
  MatX<double> bad(2, 2);
  bad << 0.9, 0.5, 0.2, 0.5;
  CHECK_THROWS_AS(Channel<double>::from_matrix(a, a, bad), InvalidConstruction);
  const auto repaired = Channel<double>::from_matrix(a, a, bad, true);
  CHECK(repaired(0, 0) == doctest::Approx(0.9 / 1.1));
  CHECK(Channel<double>::identity(a).is_deterministic());
  const auto constant = Channel<double>::constant(a, Dist<double>::uniform(a));
  CHECK(constant(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("joint marginals match a direct recomputation") {
  const auto j = random_joint<double>(3, 4, 11);
  for (Index x = 0; x < 3; ++x) {
    double s = 0.0;
    for (Index y = 0; y < 4; ++y) s += j(x, y);
    CHECK(j.marginal_x()(x) == doctest::Approx(s).epsilon(1e-12));
  }
  for (Index y = 0; y < 4; ++y) {
    double s = 0.0;
    for (Index x = 0; x < 3; ++x) s += j(x, y);
    CHECK(j.marginal_y()(y) == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK(j.fully_supported());
  // flattening follows x*|Y|+y
  const auto v = j.as_product_dist();
  CHECK(v(pair_index(2, 3, 4)) == doctest::Approx(j(2, 3)));
}

TEST_CASE("joint support mask distinguishes true zeros") {
  MatX<Rational> t(2, 2);
  t << rational(1, 2), rational(0), rational(1, 4), rational(1, 4);
  const auto j = Joint<Rational>::from_table(Alphabet::of_size(2), Alphabet::of_size(2), t);
  CHECK(!j.fully_supported());
  CHECK(j.in_support(0, 0));
  CHECK(!j.in_support(0, 1));
  CHECK(j.marginals_fully_supported());
}

TEST_CASE("compose identity and involution cases") {
  const Alphabet a2 = Alphabet::of_size(2);
  const auto g = random_channel<double>(2, 2, 3);
  const auto id = Channel<double>::identity(a2);
  CHECK((compose(id, g).matrix() - g.matrix()).norm() == doctest::Approx(0.0));
  CHECK((compose(g, id).matrix() - g.matrix()).norm() == doctest::Approx(0.0));
  const auto swap = permutation_channel<double>(Permutation::transposition(a2, 0, 1));
  CHECK((compose(swap, swap).matrix() - id.matrix()).norm() == doctest::Approx(0.0));
}

TEST_CASE("compose associativity, exact and float") {
  const auto hh = random_channel<Rational>(2, 3, 8);   // A(2) -> B(3)
  const auto gg = random_channel<Rational>(3, 2, 9);   // B(3) -> C(2)
  const auto ff = random_channel<Rational>(2, 4, 10);  // C(2) -> D(4)
  const auto lhs = compose(ff, compose(gg, hh));
  const auto rhs = compose(compose(ff, gg), hh);
  CHECK(lhs.matrix() == rhs.matrix());

  const auto hf = hh.to_float(), gf = gg.to_float(), fff = ff.to_float();
  const auto l2 = compose(fff, compose(gf, hf)).matrix();
  const auto r2 = compose(compose(fff, gf), hf).matrix();
  CHECK((l2 - r2).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("tensor product identities and the planted basis move") {
  const Alphabet a2 = Alphabet::of_size(2);
  const auto id2 = Channel<double>::identity(a2);
  const auto prod_id = tensor_product(id2, id2);
  CHECK((prod_id.matrix() - MatX<double>::Identity(4, 4)).norm() == doctest::Approx(0.0));

  const auto swap = permutation_channel<double>(Permutation::transposition(a2, 0, 1));
  const auto t = tensor_product(swap, id2);
  // basis vector at (0,1) (index 1) must land at (1,1) (index 3)
  CHECK(t(3, 1) == doctest::Approx(1.0));
  CHECK(t.matrix().col(1).sum() == doctest::Approx(1.0));
}

TEST_CASE("tensor columns sum to one for random stochastic factors") {
  const auto mu = random_channel<double>(3, 3, 21);
  const auto eta = random_channel<double>(2, 2, 22);
  const auto t = tensor_product(mu, eta);
  for (Index c = 0; c < t.matrix().cols(); ++c) {
    // direct summation oracle
    double s = 0.0;
    for (Index r = 0; r < t.matrix().rows(); ++r) s += t(r, c);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("mixed product property of tensor and compose") {
  const auto m1 = random_channel<Rational>(2, 2, 31);
  const auto m2 = random_channel<Rational>(2, 2, 32);
  const auto e1 = random_channel<Rational>(3, 3, 33);
  const auto e2 = random_channel<Rational>(3, 3, 34);
  const auto lhs = tensor_product(compose(m1, m2), compose(e1, e2));
  const auto rhs = compose(tensor_product(m1, e1), tensor_product(m2, e2));
  CHECK(lhs.matrix() == rhs.matrix());
}

TEST_CASE("pushforward special cases") {
  const Alphabet a3 = Alphabet::of_size(3);
  const auto p = random_joint<double>(3, 1, 41).marginal_x();
  CHECK((pushforward(Channel<double>::identity(a3), p).mass() - p.mass()).norm() ==
        doctest::Approx(0.0));

  const auto c = random_joint<double>(1, 3, 42).marginal_y();
  const auto constant = Channel<double>::constant(a3, c);
  CHECK((pushforward(constant, p).mass() - c.mass()).norm() == doctest::Approx(0.0).epsilon(1e-12));

  // doubly stochastic pushes uniform to uniform; oracle by direct summation
  const auto ds = random_doubly_stochastic(4, 5, 43).to_float();
  const auto u4 = Dist<double>::uniform(Alphabet::of_size(4));
  const auto out = pushforward(ds, u4);
  for (Index y = 0; y < 4; ++y) {
    double s = 0.0;
    for (Index x = 0; x < 4; ++x) s += ds(y, x) * 0.25;
    CHECK(out(y) == doctest::Approx(s));
    CHECK(out(y) == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("pushforward respects composition") {
  const auto g = random_channel<double>(3, 4, 51);
  const auto f = random_channel<double>(4, 2, 52);
  const auto p = random_joint<double>(3, 1, 53).marginal_x();
  const auto lhs = pushforward(compose(f, g), p).mass();
  const auto rhs = pushforward(f, pushforward(g, p)).mass();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("permutation channels") {
  const Alphabet a3 = Alphabet::of_size(3);
  CHECK(permutation_channel<double>(Permutation::identity(a3)).matrix() ==
        MatX<double>::Identity(3, 3));
  const auto shift = Permutation::cyclic_shift(a3, 1);
  const auto ch = permutation_channel<double>(shift);
  CHECK(ch(1, 0) == 1.0);  // column for input 0 is a unit mass at 1
  const auto inv = permutation_channel<double>(shift.inverse());
  CHECK((compose(inv, ch).matrix() - MatX<double>::Identity(3, 3)).norm() ==
        doctest::Approx(0.0));
}

TEST_CASE("permutation validation and cycle notation") {
  const Alphabet a3 = Alphabet::of_size(3);
  CHECK_THROWS_AS(Permutation::from_map(a3, {0, 0, 1}), InvalidConstruction);
  CHECK(Permutation::identity(a3).cycle_notation() == "e");
  CHECK(Permutation::cyclic_shift(a3, 1).cycle_notation() == "(0 1 2)");
  const auto t = Permutation::transposition(a3, 0, 2);
  CHECK(compose(t, t).is_identity());
  CHECK(t.inverse() == t);
}

TEST_CASE("mode downcast preserves values") {
  const auto j = testutil::bsc_joint();
  const auto f = j.to_float();
  CHECK(f(0, 0) == doctest::Approx(0.4));
  CHECK(f.marginal_x()(0) == doctest::Approx(0.5));
}
