#include "detstab/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "detstab/error.hpp"

namespace detstab {

namespace odeint = boost::numeric::odeint;

double profile_u(const ModelParams& p, double zbar) {
  const double arg = 1.0 - 2.0 * p.q() * (1.0 - zbar) / p.omega();
  return 1.0 + std::sqrt(std::max(0.0, arg));
}

ProfileTable solve_profile(const ModelParams& p, const IgnitionFunction& phi,
                           const ProfileOptions& options) {
  const double u_m = p.u_minus();
  const double u_i = phi.ignition_level();
  if (!(u_i < u_m)) {
    throw DomainError(fmt::format("ignition level too high: u_i = {} >= u_minus = {}", u_i, u_m));
  }
  const double rate = phi(u_m);
  if (!(rate > 0.0)) {
    throw DomainError(fmt::format("ignition level too high: phi(u_minus = {}) = 0", u_m));
  }
  // z decays at least as fast as the slowest rate met along the profile.
  double slowest = rate;
  for (int k = 0; k <= 512; ++k) slowest = std::min(slowest, phi(u_m + (2.0 - u_m) * k / 512.0));
  if (!(slowest > 0.0)) slowest = rate;
  const double L = options.L.value_or(30.0 / slowest);
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("truncation length must be positive");

  // tau = -xi runs forward over [0, L]. The state is ln(zbar), which keeps
  // relative accuracy in the exponentially small tail:
  //   d ln(z) / dtau = -phi(ubar(z)).
  using State = std::array<double, 1>;
  const auto rhs = [&](const State& s, State& ds, double) {
    ds[0] = -phi(profile_u(p, std::exp(s[0])));
  };

  auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol, L / 16.0,
                                           odeint::runge_kutta_dopri5<State>());
  const std::size_t n_uniform = std::max<std::size_t>(options.min_points, 2);
  std::vector<std::pair<double, double>> samples;  // (tau, ln z)
  samples.reserve(2 * n_uniform);
  samples.emplace_back(0.0, 0.0);

  State z{0.0};
  stepper.initialize(z, 0.0, std::min(1e-3 * L, 1e-3 / std::max(rate, 1e-300)));
  std::size_t next = 1;
  std::size_t steps = 0;
  while (stepper.current_time() < L) {
    stepper.do_step(rhs);
    ++steps;
    const double t_now = stepper.current_time();
    for (; next < n_uniform; ++next) {
      const double t = L * static_cast<double>(next) / static_cast<double>(n_uniform - 1);
      if (t > t_now) break;
      State zi;
      stepper.calc_state(t, zi);
      samples.emplace_back(t, zi[0]);
    }
    if (t_now < L) samples.emplace_back(t_now, stepper.current_state()[0]);
  }
  for (; next < n_uniform; ++next) {
    const double t = L * static_cast<double>(next) / static_cast<double>(n_uniform - 1);
    State zi;
    stepper.calc_state(std::min(t, stepper.current_time()), zi);
    samples.emplace_back(t, zi[0]);
  }

  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  ProfileTable table;
  table.q = p.q();
  table.omega = p.omega();
  table.L = L;
  table.tail_decay_rate = rate;
  table.steps = steps;
  table.error_estimate = static_cast<double>(steps) * (options.abs_tol + options.rel_tol);
  const double min_gap = 1e-13 * L;
  for (const auto& [tau, zval] : samples) {
    const double xi = -tau;
    if (!table.xi.empty() && xi - table.xi.back() < min_gap) {
      if (tau == 0.0) {
        table.xi.back() = 0.0;
        table.zbar.back() = 1.0;
        table.log_zbar.back() = 0.0;
      }
      continue;
    }
    table.xi.push_back(xi);
    table.zbar.push_back(std::exp(zval));
    table.log_zbar.push_back(zval);
  }
  table.xi.front() = -L;
  table.xi.back() = 0.0;
  table.zbar.back() = 1.0;
  table.log_zbar.back() = 0.0;

  if (table.zbar.front() > 10.0 * options.abs_tol) {
    throw DomainError(fmt::format("truncation insufficient: zbar(-L) = {} with L = {}",
                                  table.zbar.front(), L));
  }

  const std::size_t n = table.xi.size();
  table.ubar.resize(n);
  table.ubar_xi.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = profile_u(p, table.zbar[k]);
    table.ubar[k] = u;
    table.ubar_xi[k] = p.q() == 0.0 ? 0.0 : p.q() * phi(u) * table.zbar[k] / (p.omega() * (u - 1.0));
  }
  return table;
}

ProfileTable solve_profile(const ModelParams& p, const IgnitionFunction& phi, double L,
                           double tol) {
  ProfileOptions o;
  o.L = L;
  o.abs_tol = tol;
  o.rel_tol = tol;
  return solve_profile(p, phi, o);
}

ShockTrace shock_trace(const ProfileTable& t) {
  return ShockTrace{t.ubar.back(), t.zbar.back(), ModelParams::u_plus, ModelParams::z_plus,
                    t.ubar_xi.back()};
}

}  // namespace detstab
