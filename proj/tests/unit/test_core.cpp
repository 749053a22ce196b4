#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fjerk/core/errors.hpp"
#include "fjerk/core/model.hpp"
#include "fjerk/core/orders.hpp"

using namespace fjerk;

TEST_CASE("vector field values") {
  const JerkParams p2{0.129, 7.0, 2.0};
  CHECK(vector_field(p2, {2, 0, 0}) == Vec3{0, 0, 0});
  CHECK(vector_field(p2, {0, 0, 0}) == Vec3{0, 0, -4});
  const Vec3 v = vector_field({0.129, 7.0, 1.0}, {1, 1, 1});
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 1.0);
  CHECK(v[2] == doctest::Approx(-7.129).epsilon(1e-15));
}

TEST_CASE("equilibria") {
  auto set = equilibria({0.129, 7.0, 2.0});
  REQUIRE(set.points.size() == 2);
  CHECK_FALSE(set.degenerate);
  CHECK(set.points[0].point == Vec3{2, 0, 0});
  CHECK(set.points[0].branch == Branch::Plus);
  CHECK(set.points[1].point == Vec3{-2, 0, 0});
  CHECK(set.points[1].branch == Branch::Minus);

  set = equilibria({0.129, 7.0, 7.780});
  CHECK(set.points[0].point[0] == 7.780);
  CHECK(set.points[1].point[0] == -7.780);

  set = equilibria({0.129, 7.0, 0.0});
  REQUIRE(set.points.size() == 1);
  CHECK(set.degenerate);
  CHECK(set.points[0].point == Vec3{0, 0, 0});
}

TEST_CASE("jacobian bottom rows") {
  const JerkParams p{0.129, 7.0, 1.0};
  Mat3 J = jacobian_at(p, {{1, 0, 0}, Branch::Plus});
  CHECK(J[0] == Vec3{0, 1, 0});
  CHECK(J[1] == Vec3{0, 0, 1});
  CHECK(J[2] == Vec3{2, -7, -0.129});
  J = jacobian_at(p, {{-1, 0, 0}, Branch::Minus});
  CHECK(J[2] == Vec3{-2, -7, -0.129});
  J = jacobian_at({0.129, 7.0, 0.0}, {{0, 0, 0}, Branch::Plus});
  CHECK(J[2] == Vec3{0, -7, 0});
}

TEST_CASE("property: equilibria are zeros and the Jacobian matches finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(0.01, 5.0), ub(-10.0, 10.0), ue(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const JerkParams p{ua(rng), ub(rng), ue(rng)};
    for (const auto& eq : equilibria(p).points) {
      const Vec3 f = vector_field(p, eq.point);
      for (double v : f) CHECK(std::abs(v) < 1e-12);
      const Mat3 J = jacobian_at(p, eq);
      const double step = 1e-5;
      for (std::size_t c = 0; c < 3; ++c) {
        Vec3 hi = eq.point, lo = eq.point;
        hi[c] += step;
        lo[c] -= step;
        const Vec3 fh = vector_field(p, hi), fl = vector_field(p, lo);
        for (std::size_t r = 0; r < 3; ++r) {
          CHECK(std::abs((fh[r] - fl[r]) / (2 * step) - J[r][c]) < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("99/100") == Rational(99, 100));
  CHECK(Rational::parse("2/4") == Rational(1, 2));
  CHECK(Rational::parse("1") == Rational(1, 1));
  CHECK_THROWS_AS(Rational::parse("0.99"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("-1/2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("reduce_orders examples") {
  auto r = reduce_orders(OrderSpec::incommensurate({1, 1}, {99, 100}, {1, 1}));
  CHECK(r.M == 100);
  CHECK(r.p == 100);
  CHECK(r.q == 99);
  CHECK(r.m == 100);
  CHECK(r.theta == doctest::Approx(std::numbers::pi / 200));

  r = reduce_orders(OrderSpec::incommensurate({1, 2}, {1, 3}, {1, 4}));
  CHECK(r.M == 12);
  CHECK(r.p == 6);
  CHECK(r.q == 4);
  CHECK(r.m == 3);

  r = reduce_orders(OrderSpec::incommensurate({99, 100}, {99, 100}, {99, 100}));
  CHECK(r.M == 100);
  CHECK(r.p == 99);
  CHECK(r.q == 99);
  CHECK(r.m == 99);

  r = reduce_orders(OrderSpec::commensurate(Rational(91, 100)));
  CHECK(r.M == 100);
  CHECK(r.p == 91);
  CHECK(r.commensurate);
}

TEST_CASE("reduce_orders rejects bad input") {
  CHECK_THROWS_AS(OrderSpec::incommensurate({3, 2}, {1, 2}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(OrderSpec::commensurate(0.0), std::invalid_argument);
  CHECK_THROWS_AS(OrderSpec::commensurate(1.5), std::invalid_argument);
  // A floating commensurate order has no exact lift.
  CHECK_THROWS_AS(reduce_orders(OrderSpec::commensurate(0.99)), std::invalid_argument);
}

TEST_CASE("property: reduction is exact") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> den(1, 60);
  for (int trial = 0; trial < 300; ++trial) {
    std::array<Rational, 3> rs{Rational(1, 1), Rational(1, 1), Rational(1, 1)};
    for (auto& r : rs) {
      const int u = den(rng);
      const int v = std::uniform_int_distribution<int>(1, u)(rng);
      r = Rational(v, u);
    }
    const auto red = reduce_orders(OrderSpec::incommensurate(rs[0], rs[1], rs[2]));
    CHECK(Rational(red.p, red.M) == rs[0]);
    CHECK(Rational(red.q, red.M) == rs[1]);
    CHECK(Rational(red.m, red.M) == rs[2]);
    CHECK(red.p <= red.M);
  }
}

TEST_CASE("labels and branch parsing") {
  CHECK(OrderSpec::incommensurate({1, 1}, {99, 100}, {1, 1}).label() == "1/1;99/100;1/1");
  CHECK(OrderSpec::commensurate(0.99).label() == "0.99");
  CHECK(parse_branch("minus") == Branch::Minus);
  CHECK_THROWS_AS(parse_branch("up"), std::invalid_argument);
  CHECK(constant_sign(Branch::Plus) == -2.0);
  CHECK(constant_sign(Branch::Minus) == 2.0);
}
