#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "duopoly/error.hpp"
#include "duopoly/space.hpp"

using namespace duopoly;

TEST_CASE("p_norm on small vectors") {
  CHECK(p_norm(Point{3.0, 4.0}, PNormSpec(2, 2)) == doctest::Approx(5.0));
  CHECK(p_norm(Point{3.0, -4.0}, PNormSpec(1, 2)) == doctest::Approx(7.0));
  CHECK(p_norm(Point{1.0, 1.0}, PNormSpec(3, 2)) == doctest::Approx(std::cbrt(2.0)));
  CHECK(p_norm(Point{-2.5}, PNormSpec(4, 1)) == doctest::Approx(2.5));
}

TEST_CASE("p_norm does not overflow for large coordinates") {
  const double v = p_norm(Point{1e200, 1e200}, PNormSpec(4, 2));
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(1e200 * std::pow(2.0, 0.25)));
}

TEST_CASE("p_distance is a metric on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const PNormSpec spec(p, 3);
    for (int i = 0; i < 500; ++i) {
      const Point a{u(rng), u(rng), u(rng)};
      const Point b{u(rng), u(rng), u(rng)};
      const Point c{u(rng), u(rng), u(rng)};
      CHECK(p_distance(a, a, spec) == 0.0);
      CHECK(p_distance(a, b, spec) == doctest::Approx(p_distance(b, a, spec)));
      CHECK(p_distance(a, c, spec) <= p_distance(a, b, spec) + p_distance(b, c, spec) + 1e-12);
    }
  }
}

TEST_CASE("power-type constants") {
  const auto one = power_type_constants(PNormSpec(2, 1));
  CHECK(one.C == 0.5);
  CHECK(one.q == 1.0);
  const auto l2 = power_type_constants(PNormSpec(2, 2));
  CHECK(l2.C == doctest::Approx(1.0 / 8));
  CHECK(l2.q == 2.0);
  const auto l3 = power_type_constants(PNormSpec(3, 2));
  CHECK(l3.C == doctest::Approx(1.0 / 24));
  const auto l15 = power_type_constants(PNormSpec(1.5, 2));
  CHECK(l15.C == doctest::Approx(0.5 / 8));
  CHECK(l15.q == 2.0);
  CHECK_THROWS_AS(power_type_constants(PNormSpec(1, 2)), Error);
}

TEST_CASE("modulus lower bound stays below the l2 modulus") {
  // delta(eps) = 1 - sqrt(1 - eps^2/4) for the Euclidean norm.
  const PNormSpec spec(2, 2);
  for (double e = 0.05; e <= 2.0; e += 0.05) {
    CHECK(modulus_lower_bound(spec, e) <= 1 - std::sqrt(1 - e * e / 4) + 1e-12);
  }
  CHECK_THROWS_AS(modulus_lower_bound(spec, 0.0), Error);
  CHECK_THROWS_AS(modulus_lower_bound(spec, 2.5), Error);
}

TEST_CASE("box distance") {
  const Box a = Box::cube(2, 0, 1);
  const Box b = Box::cube(2, 2, 3);
  CHECK(box_distance(a, b, PNormSpec(2, 2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(box_distance(a, b, PNormSpec(1, 2)) == doctest::Approx(2.0));
  CHECK(box_distance(a, Box::cube(2, 0.5, 4), PNormSpec(2, 2)) == 0.0);
  CHECK(box_distance(Box({0.0}, {1.0}), Box({2.0}, {3.0}), PNormSpec(1, 1)) == 1.0);
}

TEST_CASE("box contains and clamp") {
  const Box b({0.0, -1.0}, {2.0, 1.0});
  CHECK(b.contains(Point{1.0, 0.0}));
  CHECK(b.contains(Point{2.0 + 1e-12, 1.0}));
  CHECK_FALSE(b.contains(Point{2.1, 0.0}));
  CHECK(b.clamp(Point{5.0, -3.0}) == Point{2.0, -1.0});
  CHECK(b.width(1) == 2.0);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(Point(std::vector<double>{}), Error);
  CHECK_THROWS_AS(Point({NAN}), Error);
  CHECK_THROWS_AS(PNormSpec(0.5, 2), Error);
  CHECK_THROWS_AS(PNormSpec(2, 0), Error);
  CHECK_THROWS_AS(Box(Point{1.0}, Point{0.0}), Error);
  try {
    (void)p_distance(Point{1.0}, Point{1.0, 2.0}, PNormSpec(2, 2));
    FAIL("expected a dimension error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("point arithmetic") {
  const Point a{1.0, 2.0};
  const Point b{0.5, -1.0};
  CHECK(a + b == Point{1.5, 1.0});
  CHECK(a - b == Point{0.5, 3.0});
  CHECK(2.0 * a == Point{2.0, 4.0});
  CHECK(Point::zeros(3).dimension() == 3);
}
