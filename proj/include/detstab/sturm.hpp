#pragma once

#include <complex>
#include <vector>

#include "detstab/ignition.hpp"
#include "detstab/params.hpp"
#include "detstab/profile.hpp"

namespace detstab {

/// Coefficients of the scalar second-order eigenvalue equation
///   u2'' + (f1 lambda + f2) u2' + (f3 lambda^2 + f4 lambda) u2 = 0,
/// with u2 = v2 + omega (1 - ubar) v1 / q, sampled on a profile grid.
/// Derivatives in xi are exact (propagated through the profile ODE).
struct SLCoefficients {
  std::vector<double> xi;
  std::vector<double> ubar;
  std::vector<double> f1, f2, f3, f4;
  std::vector<double> f1_xi, f2_xi;
  /// f4 - f1 f2 / 2 - f1' / 2, the coefficient of lambda in the Liouville potential.
  std::vector<double> sign_field;
  /// Integrals of f1 and f2 from 0 to xi[k].
  std::vector<double> int_f1, int_f2;
  /// Boundary condition w'(0-) = (slope_const + slope_lambda * lambda) w(0-).
  double slope_const = 0.0;
  double slope_lambda = 0.0;

  std::size_t size() const { return xi.size(); }

  std::complex<double> boundary_slope(std::complex<double> lambda) const {
    return slope_const + slope_lambda * lambda;
  }
  /// Potential of w'' + Q w = 0 at grid node k:
  ///   (f3 - f1^2/4) lambda^2 + sign_field lambda - f2^2/4 - f2'/2.
  std::complex<double> potential(std::size_t k, std::complex<double> lambda) const;
};

/// Throws DomainError("profile touches sonic value") if ubar - 1 < 1e-12 anywhere.
SLCoefficients sl_coefficients(const ModelParams& p, const ProfileTable& t,
                               const IgnitionFunction& phi);

/// [(w u - w + 1)(w u^2 - 2 w u + 2q) / (4 w^2 (u-1)^2)] phi_u(u)
///   - [(w u - w + 1) / (2 w (u-1))] phi(u)
double sign_field_closed_form(const ModelParams& p, const IgnitionFunction& phi, double u);

struct SignScan {
  bool holds = true;
  double max_value = 0.0;
  double arg_max_xi = 0.0;
};

/// holds iff sign_field <= 1e-12 on the whole grid.
SignScan sign_condition_scan(const SLCoefficients& c);

/// Coefficient b(lambda) with w'(0-) = b(lambda) w(0-) on the zero set of the
/// Evans-Lopatinsky determinant.
std::complex<double> boundary_slope(const ModelParams& p, const IgnitionFunction& phi,
                                    std::complex<double> lambda);

/// exp(1/2 int_0^xi (f1 lambda + f2)), the factor taking u2 to w.
/// Throws DomainError for xi outside [-L, 0].
std::complex<double> liouville_weight(const SLCoefficients& c, std::complex<double> lambda,
                                      double xi);

}  // namespace detstab
