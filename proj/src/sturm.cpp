#include "detstab/sturm.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "detstab/error.hpp"

namespace detstab {

namespace {

// Value plus first xi-derivative.
struct Dual {
  double v;
  double d;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator-(Dual a) { return {-a.v, -a.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
Dual operator*(double s, Dual a) { return {s * a.v, s * a.d}; }
Dual operator+(Dual a, double s) { return {a.v + s, a.d}; }
Dual operator-(Dual a, double s) { return {a.v - s, a.d}; }

struct Fields {
  Dual f1, f2, f3, f4;
};

// U = ubar, Z = zbar, Ux = ubar_xi, P = phi(ubar), Pu = phi_u(ubar).
Fields reduction_fields(double w, double q, Dual U, Dual Z, Dual Ux, Dual P, Dual Pu) {
  const double w2 = w * w;
  const Dual Um1 = U - 1.0;
  const Dual den = (w * Um1) * (w * U + (1.0 - w));
  Fields f;
  f.f1 = -((w * U + (-1.0 - w)) / (w * Um1));
  f.f3 = -(Dual{1.0, 0.0} / (w * Um1));
  const Dual qZ = q * Z;
  f.f2 = -((w2 * P - w * Ux - w * P - (2.0 * w2) * (P * U) + w2 * (P * U * U) + Pu * qZ +
            w * (P * U) - w * (Pu * qZ) + w * (Pu * qZ * U)) /
           den);
  f.f4 = -((P - w * P + w * Ux - Pu * qZ + w * (P * U) + w * (Pu * qZ) - w * (Pu * qZ * U)) /
           den);
  return f;
}

// Integral of a smooth g over [a, b] from endpoint values and slopes (cubic Hermite rule).
double hermite_integral(double h, double ga, double gb, double da, double db) {
  return 0.5 * h * (ga + gb) + h * h / 12.0 * (da - db);
}

}  // namespace

std::complex<double> SLCoefficients::potential(std::size_t k, std::complex<double> lambda) const {
  return (f3[k] - 0.25 * f1[k] * f1[k]) * lambda * lambda + sign_field[k] * lambda -
         0.25 * f2[k] * f2[k] - 0.5 * f2_xi[k];
}

SLCoefficients sl_coefficients(const ModelParams& p, const ProfileTable& t,
                               const IgnitionFunction& phi) {
  const double w = p.omega();
  const double q = p.q();
  const std::size_t n = t.size();
  SLCoefficients c;
  c.xi = t.xi;
  c.ubar = t.ubar;
  for (auto* v : {&c.f1, &c.f2, &c.f3, &c.f4, &c.f1_xi, &c.f2_xi, &c.sign_field, &c.int_f1,
                  &c.int_f2}) {
    v->resize(n);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double u = t.ubar[k];
    if (u - 1.0 < 1e-12) {
      throw DomainError(fmt::format("profile touches sonic value: ubar = {} at xi = {}", u, t.xi[k]));
    }
    const double z = t.zbar[k];
    const auto ph = phi.evaluate(u);
    // ubar_x from the profile ODE omega (ubar - 1) ubar_x = q phi zbar.
    const double ux = q * ph.value * z / (w * (u - 1.0));
    const double uxx = (q * z * (ph.du * ux + ph.value * ph.value) - w * ux * ux) / (w * (u - 1.0));
    const Dual U{u, t.ubar_xi[k]};
    const Dual Z{z, ph.value * z};
    const Dual Ux{ux, uxx};
    const Dual P{ph.value, ph.du * t.ubar_xi[k]};
    const Dual Pu{ph.du, ph.duu * t.ubar_xi[k]};
    const Fields f = reduction_fields(w, q, U, Z, Ux, P, Pu);
    c.f1[k] = f.f1.v;
    c.f2[k] = f.f2.v;
    c.f3[k] = f.f3.v;
    c.f4[k] = f.f4.v;
    c.f1_xi[k] = f.f1.d;
    c.f2_xi[k] = f.f2.d;
    c.sign_field[k] = f.f4.v - 0.5 * f.f1.v * f.f2.v - 0.5 * f.f1.d;
  }
  // Cumulative integrals from xi = 0 (the last node) leftward.
  c.int_f1[n - 1] = 0.0;
  c.int_f2[n - 1] = 0.0;
  for (std::size_t k = n - 1; k-- > 0;) {
    const double h = c.xi[k + 1] - c.xi[k];
    c.int_f1[k] = c.int_f1[k + 1] -
                  hermite_integral(h, c.f1[k], c.f1[k + 1], c.f1_xi[k], c.f1_xi[k + 1]);
    c.int_f2[k] = c.int_f2[k + 1] -
                  hermite_integral(h, c.f2[k], c.f2[k + 1], c.f2_xi[k], c.f2_xi[k + 1]);
  }
  const double ph2 = phi(ModelParams::u_star);
  const double phu2 = phi.evaluate(ModelParams::u_star).du;
  c.slope_lambda = -(w + 1.0) / (2.0 * w);
  c.slope_const = -(phu2 * q + w * ph2 - 2.0 * ph2 * q + w * w * ph2 - w * w * ph2 * q +
                    phu2 * w * q - 2.0 * w * ph2 * q) /
                  (2.0 * (w + 1.0) * w);
  return c;
}

double sign_field_closed_form(const ModelParams& p, const IgnitionFunction& phi, double u) {
  const double w = p.omega();
  const double q = p.q();
  const auto ph = phi.evaluate(u);
  const double a = w * u - w + 1.0;
  return a * (w * u * u - 2.0 * w * u + 2.0 * q) / (4.0 * w * w * (u - 1.0) * (u - 1.0)) * ph.du -
         a / (2.0 * w * (u - 1.0)) * ph.value;
}

SignScan sign_condition_scan(const SLCoefficients& c) {
  SignScan s;
  const auto it = std::max_element(c.sign_field.begin(), c.sign_field.end());
  const auto k = static_cast<std::size_t>(it - c.sign_field.begin());
  s.max_value = *it;
  s.arg_max_xi = c.xi[k];
  s.holds = s.max_value <= 1e-12;
  return s;
}

std::complex<double> boundary_slope(const ModelParams& p, const IgnitionFunction& phi,
                                    std::complex<double> lambda) {
  const double w = p.omega();
  const double q = p.q();
  const auto v = phi.evaluate(ModelParams::u_star);
  const double f = v.value;
  const double fu = v.du;
  return -(lambda * (w + 1.0) / (2.0 * w) +
           (fu * q + w * f - 2.0 * f * q + w * w * f - w * w * f * q + fu * w * q - 2.0 * w * f * q) /
               (2.0 * (w + 1.0) * w));
}

std::complex<double> liouville_weight(const SLCoefficients& c, std::complex<double> lambda,
                                      double xi) {
  if (!(xi >= c.xi.front() && xi <= c.xi.back())) {
    throw DomainError(fmt::format("xi = {} outside the profile grid [{}, 0]", xi, c.xi.front()));
  }
  const auto it = std::lower_bound(c.xi.begin(), c.xi.end(), xi);
  auto k = static_cast<std::size_t>(it - c.xi.begin());
  double i1, i2;
  if (*it == xi) {
    i1 = c.int_f1[k];
    i2 = c.int_f2[k];
  } else {
    // Cubic Hermite rule over [xi_{k-1}, xi] using f and f' at the left node and
    // Hermite-interpolated f, f' at xi.
    --k;
    const double h = c.xi[k + 1] - c.xi[k];
    const double s = xi - c.xi[k];
    const double t = s / h;
    const auto interp = [&](const std::vector<double>& g, const std::vector<double>& dg,
                            double& val, double& der) {
      const double t2 = t * t, t3 = t2 * t;
      val = (2 * t3 - 3 * t2 + 1) * g[k] + (t3 - 2 * t2 + t) * h * dg[k] +
            (-2 * t3 + 3 * t2) * g[k + 1] + (t3 - t2) * h * dg[k + 1];
      der = ((6 * t2 - 6 * t) * g[k] + (3 * t2 - 4 * t + 1) * h * dg[k] +
             (-6 * t2 + 6 * t) * g[k + 1] + (3 * t2 - 2 * t) * h * dg[k + 1]) /
            h;
    };
    double g1, d1, g2, d2;
    interp(c.f1, c.f1_xi, g1, d1);
    interp(c.f2, c.f2_xi, g2, d2);
    i1 = c.int_f1[k] + hermite_integral(s, c.f1[k], g1, c.f1_xi[k], d1);
    i2 = c.int_f2[k] + hermite_integral(s, c.f2[k], g2, c.f2_xi[k], d2);
  }
  return std::exp(0.5 * (lambda * i1 + i2));
}

}  // namespace detstab
