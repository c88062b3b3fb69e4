#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "detstab/error.hpp"
#include "detstab/profile.hpp"
#include "test_support.hpp"

using namespace detstab;

namespace {

// xi(z) = -int_{ln z}^0 ds / phi(ubar(e^s)), by adaptive Gauss-Kronrod quadrature.
double xi_of_z(const ModelParams& p, const IgnitionFunction& phi, double z) {
  const auto g = [&](double s) {
    const double zz = std::exp(s);
    const double u = 1.0 + std::sqrt(1.0 - 2.0 * p.q() * (1.0 - zz) / p.omega());
    return 1.0 / phi(u);
  };
  return -boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, std::log(z), 0.0, 15,
                                                                        1e-13);
}

}  // namespace

TEST_CASE("step profile is exp(xi)") {
  for (double q : {0.1, 0.3, 0.45}) {
    const ModelParams p(q, 1.0);
    const auto phi = IgnitionFunction::step(0.2);
    const auto t = solve_profile(p, phi);
    CHECK(t.L == doctest::Approx(30.0));
    CHECK(t.xi.front() == -t.L);
    CHECK(t.xi.back() == 0.0);
    double worst = 0.0, worst_rel = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double exact = std::exp(t.xi[k]);
      worst = std::max(worst, std::abs(t.zbar[k] - exact));
      worst_rel = std::max(worst_rel, std::abs(t.zbar[k] - exact) / exact);
      CHECK(t.ubar[k] == doctest::Approx(profile_u(p, exact)).epsilon(1e-9));
    }
    CHECK(worst < 1e-8);
    CHECK(worst_rel < 1e-8);
    CHECK(t.zbar.front() == doctest::Approx(std::exp(-30.0)).epsilon(1e-6));
  }
}

TEST_CASE("q = 0 gives a constant state behind the shock") {
  const ModelParams p(0.0, 1.0);
  const auto phi = IgnitionFunction::step(0.5, 2.0);
  const auto t = solve_profile(p, phi);
  CHECK(t.L == doctest::Approx(15.0));
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(t.ubar[k] == 2.0);
    CHECK(t.ubar_xi[k] == 0.0);
    CHECK(t.zbar[k] == doctest::Approx(std::exp(2.0 * t.xi[k])).epsilon(1e-8));
  }
}

TEST_CASE("profile matches an independent quadrature of xi(z)") {
  struct Case {
    double q, omega, E;
    TemperatureProfile T;
  };
  const std::vector<Case> cases{{0.3, 1.0, 5.0, TemperatureProfile::t1()},
                                {0.2, 0.6, 10.0, TemperatureProfile::t2()},
                                {0.45, 1.0, 2.0, TemperatureProfile::t1()},
                                {0.1, 0.5, 30.0, TemperatureProfile::t2()}};
  for (const auto& c : cases) {
    const ModelParams p(c.q, c.omega);
    const auto phi = IgnitionFunction::arrhenius_normalized(c.E, c.T);
    const auto t = solve_profile(p, phi);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); k += 37) {
      worst = std::max(worst, std::abs(xi_of_z(p, phi, t.zbar[k]) - t.xi[k]));
    }
    CAPTURE(c.q);
    CAPTURE(c.E);
    CHECK(worst < 1e-9 * t.L);
  }
}

TEST_CASE("conserved quantity and monotonicity") {
  const ModelParams p(0.35, 0.9);
  const auto phi = IgnitionFunction::arrhenius_normalized(8.0, TemperatureProfile::t1());
  ProfileOptions dense;
  dense.min_points = 200000;
  const auto t = solve_profile(p, phi, dense);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double u = t.ubar[k];
    CHECK(p.omega() * u * u / 2 - p.omega() * u - p.q() * t.zbar[k] ==
          doctest::Approx(-p.q()).epsilon(1e-12));
    CHECK(u >= p.u_minus() - 1e-14);
    CHECK(u <= 2.0);
    if (k > 0) {
      CHECK(t.xi[k] > t.xi[k - 1]);
      CHECK(t.zbar[k] >= t.zbar[k - 1]);
      CHECK(t.ubar[k] >= t.ubar[k - 1]);
    }
  }
  // ubar' against a centered difference of the table.
  for (std::size_t k = 1; k + 1 < t.size(); k += 997) {
    // second-order three-point formula on a nonuniform grid
    const double h1 = t.xi[k] - t.xi[k - 1], h2 = t.xi[k + 1] - t.xi[k];
    const double fd = (h1 * h1 * (t.ubar[k + 1] - t.ubar[k]) + h2 * h2 * (t.ubar[k] - t.ubar[k - 1])) /
                      (h1 * h2 * (h1 + h2));
    CHECK(std::abs(fd - t.ubar_xi[k]) < 1e-5 * std::max(t.ubar_xi[k], 1e-4));
  }
}

TEST_CASE("shock trace") {
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = test::random_params();
    const auto phi = IgnitionFunction::arrhenius_normalized(test::uniform(0.0, 10.0),
                                                            TemperatureProfile::t2());
    const auto tr = shock_trace(solve_profile(p, phi));
    CHECK(tr.u_star == 2.0);
    CHECK(tr.z_left == 1.0);
    CHECK(tr.u_plus == 0.0);
    CHECK(tr.z_plus == 1.0);
    CHECK(tr.ubar_xi_left == doctest::Approx(p.q() / p.omega()).epsilon(1e-12));
  }
}

TEST_CASE("halving tolerances moves the profile by less than the error estimate") {
  const ModelParams p(0.4, 1.0);
  const auto phi = IgnitionFunction::arrhenius_normalized(12.0, TemperatureProfile::t1());
  ProfileOptions coarse;
  coarse.abs_tol = coarse.rel_tol = 1e-8;
  ProfileOptions fine = coarse;
  fine.abs_tol = fine.rel_tol = 5e-9;
  const auto a = solve_profile(p, phi, coarse);
  const auto b = solve_profile(p, phi, fine);
  REQUIRE(a.L == b.L);
  std::map<double, double> fine_at;
  for (std::size_t k = 0; k < b.size(); ++k) fine_at[b.xi[k]] = b.zbar[k];
  std::size_t shared = 0;
  double diff = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto it = fine_at.find(a.xi[k]);
    if (it == fine_at.end()) continue;
    ++shared;
    diff = std::max(diff, std::abs(it->second - a.zbar[k]));
  }
  CHECK(shared >= 2000);
  CHECK(diff <= a.error_estimate);
  CHECK(diff > 0.0);
}

TEST_CASE("tail decays at phi(u_minus)") {
  const ModelParams p(0.3, 0.8);
  const auto phi = IgnitionFunction::arrhenius_normalized(6.0, TemperatureProfile::t1());
  const auto t = solve_profile(p, phi);
  CHECK(t.tail_decay_rate == doctest::Approx(phi(p.u_minus())));
  const std::size_t k = 10;
  const double slope = std::log(t.zbar[k] / t.zbar[0]) / (t.xi[k] - t.xi[0]);
  CHECK(slope == doctest::Approx(t.tail_decay_rate).epsilon(1e-6));
  CHECK(t.zbar.front() < 1e-9);
}

TEST_CASE("profile error conditions") {
  const ModelParams p(0.3, 1.0);  // u_minus ~ 1.632
  CHECK_THROWS_WITH_AS(solve_profile(p, IgnitionFunction::step(1.7)),
                       doctest::Contains("ignition level too high"), DomainError);
  CHECK_THROWS_WITH_AS(solve_profile(p, IgnitionFunction::step(p.u_minus())),
                       doctest::Contains("ignition level too high"), DomainError);
  CHECK_THROWS_WITH_AS(solve_profile(p, IgnitionFunction::step(0.5), 5.0, 1e-10),
                       doctest::Contains("truncation insufficient"), DomainError);
  CHECK_NOTHROW(solve_profile(p, IgnitionFunction::step(0.5), 25.0, 1e-10));
}
