#include "detstab/evans.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "detstab/error.hpp"
#include "detstab/parallel.hpp"

namespace detstab {

namespace odeint = boost::numeric::odeint;

namespace {

void check_lambda(const EigenSystem& sys, Complex lambda) {
  if (!(lambda.real() >= -0.5 * sys.phi_minus())) {
    throw DomainError(fmt::format("Re lambda = {} below the mode gap -phi(u_minus)/2 = {}",
                                  lambda.real(), -0.5 * sys.phi_minus()));
  }
}

// Right-hand side of d ytilde / d s, s = ln zbar: (M - mu) ytilde / phi.
struct GaugedSystem {
  const EigenSystem& sys;
  Complex lambda;
  Complex mu;

  void operator()(const CVec2& y, CVec2& dy, double s) const {
    const double z = std::exp(s);
    const auto c = sys.at(z);
    const auto M = sys.generator(z, lambda);
    const double inv_rate = 1.0 / c.phi;
    dy[0] = ((M[0][0] - mu) * y[0] + M[0][1] * y[1]) * inv_rate;
    dy[1] = (M[1][0] * y[0] + (M[1][1] - mu) * y[1]) * inv_rate;
  }
};

double log_zbar(const ProfileTable& t, std::size_t k) {
  if (t.log_zbar.size() == t.size()) return t.log_zbar[k];
  if (!(t.zbar[k] > 0.0)) throw DomainError("profile table has no positive tail value");
  return std::log(t.zbar[k]);
}

// Below zbar = e^-36 the coefficients equal their limits to rounding, and the
// gauged decaying mode is the constant limit eigenvector there.
constexpr double kFrozenLogZ = -36.0;

double tail_start(const ProfileTable& t) {
  if (t.size() < 2) throw DomainError("profile table has fewer than two points");
  return std::max(log_zbar(t, 0), kFrozenLogZ);
}

// The frozen tail can make the error estimate vanish exactly; cap the step so
// the controller cannot jump across the whole profile.
double max_step(double s0) { return std::max(-s0 / 16.0, 1e-3); }

Complex det2(const CVec2& a, const CVec2& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

EigenSystem::EigenSystem(const ModelParams& p, const IgnitionFunction& phi)
    : p_(p), phi_(phi), phi_minus_(phi(p.u_minus())), phi_star_(phi(ModelParams::u_star)) {
  if (!(phi_minus_ > 0.0)) {
    throw DomainError("ignition level too high: phi(u_minus) = 0, no decaying end state");
  }
}

EigenSystem::Coefficients EigenSystem::at(double zbar) const {
  Coefficients c{};
  const double q = p_.q();
  const double w = p_.omega();
  c.zbar = zbar;
  c.ubar = profile_u(p_, zbar);
  const auto v = phi_.evaluate(c.ubar);
  c.phi = v.value;
  c.phi_u = v.du;
  c.A = {{{w * (c.ubar - 1.0), 0.0}, {0.0, -1.0}}};
  c.E = {{{q * zbar * v.du, q * v.value}, {-zbar * v.du, -v.value}}};
  c.W = {c.ubar, zbar};
  c.R = {q * v.value * zbar, -v.value * zbar};
  return c;
}

CMat2 EigenSystem::generator(double zbar, Complex lambda) const {
  const auto c = at(zbar);
  const double inv_a = 1.0 / c.A[0][0];
  return {{{(c.E[0][0] - lambda) * inv_a, Complex(-c.E[0][1])},
           {Complex(c.E[1][0] * inv_a), -(c.E[1][1] - lambda)}}};
}

CMat2 EigenSystem::limit_matrix(Complex lambda) const {
  const double a = std::sqrt(p_.omega() * p_.omega() - 2.0 * p_.q() * p_.omega());
  return {{{-lambda / a, Complex(phi_minus_ * p_.q() / a)}, {Complex(0.0), lambda + phi_minus_}}};
}

std::array<Complex, 2> EigenSystem::limit_eigenvalues(Complex lambda) const {
  const double a = std::sqrt(p_.omega() * p_.omega() - 2.0 * p_.q() * p_.omega());
  return {-lambda / a, lambda + phi_minus_};
}

CVec2 EigenSystem::decaying_eigenvector(Complex lambda) const {
  const auto ev = limit_eigenvalues(lambda);
  const Complex gap = ev[1] - ev[0];
  if (std::abs(gap) < 1e-10) {
    throw DomainError(fmt::format("mode collision at lambda = {}+{}i", lambda.real(), lambda.imag()));
  }
  // y-generator at -inf is [[-lambda/a, -q phi_-], [0, lambda + phi_-]].
  return {-p_.q() * phi_minus_ / gap, Complex(1.0)};
}

CVec2 EigenSystem::jump_vector(Complex lambda) const {
  return {p_.q() * phi_star_ - 2.0 * lambda, Complex(-phi_star_)};
}

CVec2 jump_vector(const ModelParams& p, const IgnitionFunction& phi, Complex lambda) {
  const double ph2 = phi(ModelParams::u_star);
  return {p.q() * ph2 - 2.0 * lambda, Complex(-ph2)};
}

ModeSolution decaying_mode(const EigenSystem& sys, const ProfileTable& t, Complex lambda,
                           const EvansOptions& options) {
  check_lambda(sys, lambda);
  const GaugedSystem rhs{sys, lambda, sys.decay_rate(lambda)};
  ModeSolution sol;
  sol.mu = rhs.mu;
  sol.L = t.L;
  sol.xi = t.xi;
  sol.y_gauged.resize(t.size());

  const double s0 = tail_start(t);
  CVec2 y = sys.decaying_eigenvector(lambda);
  sol.y_gauged[0] = y;
  std::size_t next = 1;
  for (; next + 1 < t.size() && log_zbar(t, next) <= s0; ++next) sol.y_gauged[next] = y;
  auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol, max_step(s0),
                                           odeint::runge_kutta_dopri5<CVec2>());
  stepper.initialize(y, s0, 1e-2);
  while (next < t.size()) {
    stepper.do_step(rhs);
    for (; next < t.size(); ++next) {
      const double s = next + 1 == t.size() ? 0.0 : log_zbar(t, next);
      if (s > stepper.current_time()) break;
      stepper.calc_state(s, sol.y_gauged[next]);
    }
  }
  return sol;
}

EvansResult delta(const EigenSystem& sys, const ProfileTable& t, Complex lambda,
                  const EvansOptions& options) {
  check_lambda(sys, lambda);
  const GaugedSystem rhs{sys, lambda, sys.decay_rate(lambda)};
  CVec2 y = sys.decaying_eigenvector(lambda);
  const double s0 = tail_start(t);
  odeint::integrate_adaptive(odeint::make_controlled(options.abs_tol, options.rel_tol, max_step(s0),
                                                     odeint::runge_kutta_dopri5<CVec2>()),
                             rhs, y, s0, 0.0, 1e-2);
  EvansResult r;
  r.lambda = lambda;
  r.delta = det2(sys.jump_vector(lambda), y);
  r.gauge_log = rhs.mu.real() * t.L;
  return r;
}

EvansFunction::EvansFunction(const ModelParams& p, const IgnitionFunction& phi,
                             ProfileTable profile, EvansOptions options)
    : sys_(p, phi), profile_(std::move(profile)), options_(options), origin_scale_(1.0) {
  CVec2 y = sys_.decaying_eigenvector(0.0);
  const GaugedSystem rhs{sys_, 0.0, sys_.decay_rate(0.0)};
  const double s0 = tail_start(profile_);
  odeint::integrate_adaptive(odeint::make_controlled(options_.abs_tol, options_.rel_tol, max_step(s0),
                                                     odeint::runge_kutta_dopri5<CVec2>()),
                             rhs, y, s0, 0.0, 1e-2);
  const auto R0 = sys_.at(1.0).R;
  origin_scale_ = p.q() > 0.0 ? R0[0] / y[0].real() : R0[1] / y[1].real();
}

EvansFunction::EvansFunction(const ModelParams& p, const IgnitionFunction& phi,
                             EvansOptions options)
    : EvansFunction(p, phi, solve_profile(p, phi), options) {}

EvansResult EvansFunction::operator()(Complex lambda) const {
  return delta(sys_, profile_, lambda, options_);
}

double default_contour_radius(const EigenSystem& sys) {
  return 10.0 * std::max({1.0, sys.phi_minus(), 1.0 / sys.params().omega()});
}

WindingCertificate winding_count(const EvansFunction& evans, double R, double r0,
                                 const WindingOptions& options) {
  if (!(r0 > 0.0) || !(R > r0)) throw DomainError("winding contour requires R > r0 > 0");
  constexpr double pi = std::numbers::pi;
  const bool left = options.origin_included;
  const auto lambda_at = [&](int piece, double t) -> Complex {
    switch (piece) {
      case 0: return std::polar(R, -0.5 * pi + pi * t);
      case 1: return {0.0, R - t * (R - r0)};
      case 2: return std::polar(r0, left ? 0.5 * pi + pi * t : 0.5 * pi - pi * t);
      default: return {0.0, -(r0 + t * (R - r0))};
    }
  };

  struct Node {
    double t;
    Complex delta;
  };
  std::array<std::vector<Node>, 4> pieces;
  struct Request {
    int piece;
    double t;
  };
  std::vector<Request> pending;
  const std::size_t n0 = std::max<std::size_t>(options.initial_samples_per_piece, 2);
  for (int p = 0; p < 4; ++p) {
    for (std::size_t k = 0; k < n0; ++k) {
      pending.push_back({p, static_cast<double>(k) / static_cast<double>(n0 - 1)});
    }
  }
  std::size_t used = 0;
  const auto phase = [](Complex a, Complex b) { return std::arg(b / a); };

  while (!pending.empty()) {
    used += pending.size();
    if (used > options.sample_budget) {
      throw DomainError(fmt::format(
          "unresolved phase: {} samples exceed the budget; Delta likely vanishes near the contour",
          used));
    }
    const auto values = parallel_map(
        pending.size(),
        [&](std::size_t i) { return evans(lambda_at(pending[i].piece, pending[i].t)).delta; },
        options.threads);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (values[i] == Complex(0.0)) {
        throw DomainError("unresolved phase: Delta vanishes on the contour");
      }
      pieces[pending[i].piece].push_back({pending[i].t, values[i]});
    }
    pending.clear();
    for (int p = 0; p < 4; ++p) {
      auto& nodes = pieces[p];
      std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.t < b.t; });
      for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        if (std::abs(phase(nodes[k].delta, nodes[k + 1].delta)) >= options.phase_step_limit) {
          pending.push_back({p, 0.5 * (nodes[k].t + nodes[k + 1].t)});
        }
      }
    }
  }

  WindingCertificate cert;
  cert.R = R;
  cert.r0 = r0;
  cert.origin_included = left;
  cert.samples_used = used;
  double total = 0.0;
  for (int p = 0; p < 4; ++p) {
    const auto& nodes = pieces[p];
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      cert.samples.push_back({p, nodes[k].t, lambda_at(p, nodes[k].t), nodes[k].delta});
      if (k + 1 < nodes.size()) {
        const double d = phase(nodes[k].delta, nodes[k + 1].delta);
        cert.max_phase_step = std::max(cert.max_phase_step, std::abs(d));
        total += d;
      }
    }
    // The closing point of each piece coincides with the opening point of the next.
    const auto& next = pieces[(p + 1) % 4];
    total += phase(nodes.back().delta, next.front().delta);
  }
  cert.winding_real = total / (2.0 * pi);
  cert.winding = static_cast<int>(std::lround(cert.winding_real));
  if (std::abs(cert.winding_real - cert.winding) > 1e-6) {
    throw DomainError(fmt::format("unresolved phase: non-integer winding {}", cert.winding_real));
  }
  return cert;
}

std::vector<WindingCertificate> homotopy_track(const ModelParams& p,
                                               const IgnitionFunction& target,
                                               const IgnitionFunction& base,
                                               std::span<const double> r_grid, double R,
                                               double r0, const WindingOptions& options) {
  std::vector<WindingCertificate> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    const auto phi = IgnitionFunction::homotopy(r, target, base);
    out.push_back(winding_count(EvansFunction(p, phi), R, r0, options));
  }
  return out;
}

}  // namespace detstab
