#include <doctest.h>

#include <cmath>
#include <vector>

#include "detstab/error.hpp"
#include "detstab/ignition.hpp"
#include "test_support.hpp"

using namespace detstab;

TEST_CASE("step ignition") {
  const auto phi = IgnitionFunction::step(1.2);
  const auto v = phi.evaluate(1.5);
  CHECK(v.value == 1.0);
  CHECK(v.du == 0.0);
  REQUIRE(v.log_du);
  CHECK(*v.log_du == 0.0);
  CHECK(phi.evaluate(1.0).below_ignition());
  CHECK(phi.evaluate(1.0).value == 0.0);
  CHECK_THROWS_AS(phi.evaluate(1.2), DomainError);
  CHECK(phi.ignition_level() == 1.2);
  CHECK(phi.is_step());
}

TEST_CASE("Arrhenius with T2 at u = 2") {
  // phi = exp(-E/u), phi' = phi E/u^2, (ln phi)' = E/u^2
  const auto phi = IgnitionFunction::arrhenius(1.0, 2.0, TemperatureProfile::t2());
  const auto v = phi.evaluate(2.0);
  CHECK(v.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(v.du == doctest::Approx(std::exp(-1.0) * 2.0 / 4.0).epsilon(1e-15));
  REQUIRE(v.log_du);
  CHECK(*v.log_du == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("Arrhenius cutoff returns exactly zero where T <= 0") {
  const auto t1 = IgnitionFunction::arrhenius(3.0, 4.0, TemperatureProfile::t1());
  for (double u : {0.0, 0.2, 0.5, 2.5, 3.0}) {
    const auto v = t1.evaluate(u);
    CHECK(v.value == 0.0);
    CHECK(v.du == 0.0);
    CHECK(v.below_ignition());
  }
  CHECK(t1.ignition_level() == doctest::Approx(0.5).epsilon(1e-12));
  const auto t2 = IgnitionFunction::arrhenius(1.0, 4.0, TemperatureProfile::t2());
  CHECK(t2.evaluate(0.0).value == 0.0);
  CHECK(t2.evaluate(-0.3).value == 0.0);
  CHECK(t2.ignition_level() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("normalized Arrhenius has phi(2) = 1") {
  for (double E : {0.0, 3.0, 12.0}) {
    CHECK(IgnitionFunction::arrhenius_normalized(E, TemperatureProfile::t1())(2.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(IgnitionFunction::arrhenius_normalized(E, TemperatureProfile::t2())(2.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("polynomial temperature law") {
  const auto T = TemperatureProfile::polynomial({-0.5, 1.0, 3.0, -1.0});
  for (double u : {0.1, 0.8, 1.7}) {
    const auto s = T(u);
    CHECK(s.T == doctest::Approx(-0.5 + u + 3 * u * u - u * u * u));
    CHECK(s.du == doctest::Approx(1.0 + 6 * u - 3 * u * u));
    CHECK(s.duu == doctest::Approx(6.0 - 6 * u));
  }
  const auto T1 = TemperatureProfile::t1();
  const auto P1 = TemperatureProfile::polynomial({-1.25, 3.0, -1.0});
  for (double u : {0.3, 1.1, 1.9}) CHECK(P1(u).T == doctest::Approx(T1(u).T));
}

namespace {

std::vector<IgnitionFunction> sample_laws() {
  const auto arr1 = IgnitionFunction::arrhenius(2.0, 3.0, TemperatureProfile::t1());
  const auto arr2 = IgnitionFunction::arrhenius_normalized(6.0, TemperatureProfile::t2());
  const auto poly = IgnitionFunction::arrhenius(
      1.0, 1.5, TemperatureProfile::polynomial({-0.2, 0.4, 0.3}));
  const auto tab = IgnitionFunction::tabulated({0.0, 0.4, 0.7, 1.0, 1.4, 1.8, 2.2},
                                               {0.0, 0.0, 0.3, 0.5, 0.55, 1.1, 2.0});
  const auto step = IgnitionFunction::step(0.5);
  return {arr1,
          arr2,
          poly,
          tab,
          step,
          IgnitionFunction::homotopy(0.35, arr1, step),
          IgnitionFunction::homotopy(0.8, arr2, tab),
          IgnitionFunction::rescaled(arr1, RescaleMap{1.5, 0.5, 2.0})};
}

}  // namespace

TEST_CASE("analytic derivatives match finite differences for every variant") {
  for (const auto& phi : sample_laws()) {
    CAPTURE(phi.describe());
    const double lo = std::max(phi.ignition_level(), 0.0) + 0.05;
    int tested = 0;
    for (int k = 0; k < 100; ++k) {
      const double u = test::uniform(lo, 2.0);
      const double h = 1e-5;
      const auto v = phi.evaluate(u);
      const auto vp = phi.evaluate(u + h);
      const auto vm = phi.evaluate(u - h);
      if (v.below_ignition() || vp.below_ignition() || vm.below_ignition()) continue;
      if (v.value < 1e-6) continue;  // essential zero near the cutoff; FD is all roundoff
      const double fd = (vp.value - vm.value) / (2 * h);
      CHECK(std::abs(fd - v.du) <= 1e-6 * std::max(std::abs(v.du), std::abs(v.value)));
      const double fd2 = (vp.du - vm.du) / (2 * h);
      if (!std::holds_alternative<IgnitionFunction::Tabulated>(phi.variant()) &&
          !std::holds_alternative<IgnitionFunction::Homotopy>(phi.variant())) {
        CHECK(std::abs(fd2 - v.duu) <= 1e-5 * std::max({std::abs(v.duu), std::abs(v.du), v.value}));
      }
      CHECK(*v.log_du == doctest::Approx(v.du / v.value).epsilon(1e-12));
      ++tested;
    }
    CHECK(tested > 50);
  }
}

TEST_CASE("homotopy endpoints and log-derivative blending") {
  const auto target = IgnitionFunction::arrhenius(1.0, 4.0, TemperatureProfile::t1());
  const auto base = IgnitionFunction::step(0.6);
  const auto h1 = IgnitionFunction::homotopy(1.0, target, base);
  const auto h0 = IgnitionFunction::homotopy(0.0, target, base);
  for (int k = 0; k < 50; ++k) {
    const double u = test::uniform(0.0, 2.0);
    if (u == 0.6) continue;
    CHECK(h1(u) == target(u));
    CHECK(h0(u) == base(u));
  }
  for (double r : {0.1, 0.5, 0.9}) {
    const auto h = IgnitionFunction::homotopy(r, target, base);
    for (double u : {0.9, 1.3, 1.95}) {
      const auto v = h.evaluate(u);
      REQUIRE(v.log_du);
      CHECK(*v.log_du == doctest::Approx(r * *target.evaluate(u).log_du).epsilon(1e-13));
      CHECK(v.value == doctest::Approx(std::pow(target(u), r)).epsilon(1e-13));
    }
    CHECK(h.ignition_level() == doctest::Approx(0.6));
  }
  CHECK_THROWS_AS(IgnitionFunction::homotopy(1.5, target, base), DomainError);
}

TEST_CASE("tabulated monotone cubic") {
  const std::vector<double> u{0.0, 0.5, 1.0, 1.5, 2.0};
  const std::vector<double> phi{0.0, 0.0, 0.2, 0.9, 1.0};
  const auto tab = IgnitionFunction::tabulated(u, phi);
  for (std::size_t k = 0; k < u.size(); ++k) CHECK(tab(u[k]) == doctest::Approx(phi[k]));
  CHECK(tab.ignition_level() == 0.5);
  CHECK(tab.evaluate(0.3).below_ignition());
  CHECK(tab.evaluate(0.5).below_ignition());
  CHECK_FALSE(tab.evaluate(0.5001).below_ignition());
  // Monotone data gives a monotone interpolant.
  double prev = -1.0;
  for (int k = 0; k <= 2000; ++k) {
    const double x = 2.0 * k / 2000.0;
    const double v = tab(x);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  CHECK(tab(2.5) == 1.0);

  CHECK_THROWS_AS(IgnitionFunction::tabulated({0.0, 1.0}, {0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(IgnitionFunction::tabulated({0.0, 1.0, 0.5}, {0.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(IgnitionFunction::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(IgnitionFunction::tabulated({0.0}, {0.0}), DomainError);
}

TEST_CASE("rescaled law") {
  const auto inner = IgnitionFunction::arrhenius(1.0, 2.0, TemperatureProfile::t2());
  const RescaleMap map{2.0, 1.0, 3.0};
  const auto phi = IgnitionFunction::rescaled(inner, map);
  for (double ut : {0.5, 1.2, 2.0}) {
    const double u = map.to_original(ut);
    CHECK(phi(ut) == doctest::Approx(3.0 * inner(u)));
    CHECK(*phi.evaluate(ut).log_du == doctest::Approx(map.width() * *inner.evaluate(u).log_du));
  }
  CHECK(phi.ignition_level() == doctest::Approx(map.to_rescaled(0.0)));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(IgnitionFunction::step(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(IgnitionFunction::arrhenius(0.0, 1.0, TemperatureProfile::t1()), DomainError);
  CHECK_THROWS_AS(IgnitionFunction::arrhenius(1.0, -1.0, TemperatureProfile::t1()), DomainError);
  CHECK_THROWS_AS(TemperatureProfile::by_name("T3"), DomainError);
  CHECK(TemperatureProfile::by_name("t1").kind() == TemperatureProfile::Kind::T1);
}
