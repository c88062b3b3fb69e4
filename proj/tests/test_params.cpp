#include <doctest.h>

#include <cmath>

#include "detstab/error.hpp"
#include "detstab/params.hpp"
#include "test_support.hpp"

using namespace detstab;

TEST_CASE("rescale: identity case s=1, u_plus=0") {
  const auto orig = OriginalParams::from_speed(1.0, 0.0, 0.3, 1.0, 0.4);
  const auto r = rescale(orig);
  CHECK(r.params.omega() == 1.0);
  CHECK(r.params.q() == doctest::Approx(0.3).epsilon(1e-15));
  for (double u : {0.0, 0.7, 1.3, 2.0}) {
    CHECK(r.map.to_rescaled(u) == u);
    CHECK(r.map.to_original(u) == u);
  }
  CHECK(r.u_i == doctest::Approx(0.4));
}

TEST_CASE("rescale: s=2, u_plus=1, q=0.1") {
  const auto r = rescale(OriginalParams::from_speed(2.0, 1.0, 0.1, 1.0, 1.5));
  CHECK(r.params.omega() == 0.5);
  CHECK(r.params.q() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(r.map.to_rescaled(3.0) == 2.0);  // u_star maps to 2
  CHECK(r.map.to_rescaled(1.0) == 0.0);  // u_plus maps to 0
}

TEST_CASE("rescale then unrescale is the identity") {
  for (int trial = 0; trial < 500; ++trial) {
    const double s = test::uniform(0.5, 5.0);
    const double u_plus = test::uniform(0.0, 0.9 * s);
    const double d = s - u_plus;
    const double q = test::uniform(0.0, 0.45) * d * d / s;
    const auto orig = OriginalParams::from_speed(s, u_plus, q, test::uniform(0.1, 3.0),
                                                 u_plus + test::uniform(0.01, 1.0) * d);
    const auto r = rescale(orig);
    const auto back = unrescale(r.params, r.map, r.u_i);
    CHECK(back.s == doctest::Approx(orig.s).epsilon(1e-14));
    CHECK(back.u_plus == doctest::Approx(orig.u_plus).epsilon(1e-12).scale(s));
    CHECK(back.u_star == doctest::Approx(orig.u_star).epsilon(1e-13));
    CHECK(back.q == doctest::Approx(orig.q).epsilon(1e-13).scale(1.0));
    CHECK(back.k == orig.k);
    CHECK(back.u_i == doctest::Approx(orig.u_i).epsilon(1e-13).scale(s));
    // Burned state in either coordinate system agrees.
    CHECK(r.map.to_rescaled(orig.u_minus()) == doctest::Approx(r.params.u_minus()).epsilon(1e-12));
  }
}

TEST_CASE("rescale rejects non-strong orderings") {
  OriginalParams bad{1.0, 1.0, 1.0, 0.1, 1.0, 1.2};
  CHECK_THROWS_AS(rescale(bad), DomainError);
  CHECK_THROWS_AS(OriginalParams::from_speed(1.0, 2.0, 0.1, 1.0, 2.5), DomainError);
  OriginalParams rh{1.0, 0.0, 2.5, 0.1, 1.0, 0.5};
  CHECK_THROWS_AS(rh.validate(), DomainError);
  CHECK_THROWS_AS(OriginalParams::from_speed(1.0, 0.0, 0.1, 1.0, -0.1), DomainError);
}

TEST_CASE("u_minus closed form") {
  CHECK(u_minus(0.0, 1.0) == 2.0);
  CHECK(u_minus(0.375, 1.0) == 1.5);

  // Larger root of omega u^2 - 2 omega u + 2 q = 0 by bisection.
  const double q = 0.49, omega = 1.0;
  double a = 1.0, b = 2.0;
  for (int k = 0; k < 200; ++k) {
    const double m = 0.5 * (a + b);
    (omega * m * m - 2.0 * omega * m + 2.0 * q < 0.0 ? a : b) = m;
  }
  CHECK(u_minus(q, omega) == doctest::Approx(a).epsilon(1e-14));
  CHECK(u_minus(q, omega) == doctest::Approx(1.0 + std::sqrt(0.02)).epsilon(1e-15));
  CHECK(u_minus(q, omega) == doctest::Approx(1.1414).epsilon(1e-4));
}

TEST_CASE("u_minus and ModelParams reject degenerate parameters") {
  CHECK_THROWS_AS(u_minus(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(u_minus(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(ModelParams(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(ModelParams(-0.1, 1.0), DomainError);
  CHECK_THROWS_AS(ModelParams(0.1, 0.0), DomainError);
  CHECK_THROWS_AS(ModelParams(0.1, 1.5), DomainError);
  const ModelParams p(0.2, 0.8);
  CHECK(p.u_minus() > 1.0);
  CHECK(p.u_minus() <= 2.0);
  CHECK(p.u_lim() == p.u_minus());
  CHECK(p.q_over_omega() == doctest::Approx(0.25));
}
