#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "duopoly/contraction.hpp"
#include "duopoly/error.hpp"
#include "oracles.hpp"

using namespace duopoly;

TEST_CASE("contraction factor") {
  CHECK(contraction_factor(TypeOneParams(0.5, 0.125, 1.0 / 3, 1.0 / 6)) == doctest::Approx(5.0 / 6));
  CHECK(contraction_factor(TypeOneParams(0, 0.5, 0.5, 0)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(TypeOneParams(0.6, 0.1, 0.4, 0.1), Error);
  CHECK_THROWS_AS(TypeOneParams(-0.1, 0.1, 0.1, 0.1), Error);
  CHECK_THROWS_AS(TypeTwoParams(0.5, 0.5, 1), Error);
}

TEST_CASE("a priori bound values") {
  CHECK(a_priori_fixed(5.0 / 6, 25.8333, 41) == doctest::Approx(0.0876).epsilon(1e-2));
  CHECK(a_priori_fixed(0.5, 85, 11) == doctest::Approx(2 * 85 * std::pow(2.0, -11)));
  CHECK(a_priori_fixed(0.5, 85, 0) == doctest::Approx(170));
  CHECK(a_posteriori_fixed(0.5, 3.0) == doctest::Approx(3.0));
  CHECK(rate_bound(0.25, 8.0) == 2.0);
}

TEST_CASE("a priori counts agree with counting") {
  const double d0 = 25.0 + 5.0 / 6;
  const int expected[] = {41, 53, 66, 79, 91};
  int i = 0;
  for (double eps : {0.1, 0.01, 0.001, 0.0001, 0.00001}) {
    CHECK(iterations_for_a_priori(5.0 / 6, d0, eps) == expected[i++]);
  }
  for (double k : {0.1, 0.5, 0.75, 0.9, 0.99}) {
    for (double d : {1e-3, 1.0, 250.0}) {
      for (double eps : {1e-1, 1e-4, 1e-8}) {
        CHECK(iterations_for_a_priori(k, d, eps) == oracle::count_a_priori(k, d, eps));
      }
    }
  }
  CHECK(iterations_for_a_priori(0.5, 0.0, 1e-3) == 0);
  CHECK_THROWS_AS(iterations_for_a_priori(0.5, 1.0, 0.0), Error);
  CHECK_THROWS_AS(iterations_for_a_priori(1.0, 1.0, 0.1), Error);
}

TEST_CASE("proximity bounds") {
  const TypeTwoParams p(0.5, 0.25, 1.0);
  // M0 = 2.6, W = 1.6 in dimension one.
  CHECK(a_priori_prox(p, 0.5, 1, 2.6, 1.6, 21) <= 0.1);
  CHECK(a_priori_prox(p, 0.5, 1, 2.6, 1.6, 20) > 0.1);
  CHECK(iterations_for_a_priori_prox(p, 0.5, 1, 2.6, 1.6, 0.1) == 21);
  CHECK(iterations_for_a_priori_prox(p, 0.5, 1, 2.6, 1.6, 1e-5) == 53);
  const TypeTwoParams q(9.0 / 16, 0.25, std::sqrt(2.0));
  for (double eps : {1e-1, 1e-3, 1e-6}) {
    CHECK(iterations_for_a_priori_prox(q, 0.125, 2, 2.0, 0.5, eps) ==
          oracle::count_a_priori_prox(q.sum(), 0.125, 2, q.d(), 2.0, 0.5, eps));
  }
  CHECK(a_posteriori_prox(p, 0.5, 1, 1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(a_priori_prox(TypeTwoParams(0.5, 0.25, 0.0), 0.5, 1, 1, 1, 1), Error);
}

TEST_CASE("bounds decrease in n") {
  for (std::int64_t n = 0; n < 60; ++n) {
    CHECK(a_priori_fixed(0.7, 3.0, n + 1) < a_priori_fixed(0.7, 3.0, n));
  }
}

TEST_CASE("reports carry their inputs") {
  const auto r = a_priori_fixed_report(0.5, 2.0, 3);
  CHECK(r.kind == BoundKind::kAPrioriFixed);
  CHECK(r.value == doctest::Approx(0.5));
  CHECK(r.inputs.size() == 3);
  CHECK(to_string(BoundKind::kAPosterioriProx) == "a-posteriori-prox");
}

TEST_CASE("scaled constants") {
  const TypeOneParams t(0.5, 0.25, 0.25, 0.5);
  const auto s = t.scaled(0.8);
  CHECK(s.alpha() == doctest::Approx(0.4));
  CHECK(contraction_factor(s) == doctest::Approx(0.6));
  const TypeTwoParams u(0.5, 0.25, 1.0);
  CHECK(u.scaled(0.8).sum() == doctest::Approx(0.6));
  CHECK(u.scaled(0.8).d() == 1.0);
}
