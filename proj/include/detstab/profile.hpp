#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "detstab/ignition.hpp"
#include "detstab/params.hpp"

namespace detstab {

/// Left half-line profile sampled on [-L, 0]. The right half-line is the
/// quiescent state (u, z) = (0, 1).
struct ProfileTable {
  std::vector<double> xi;       ///< strictly increasing, xi.front() = -L, xi.back() = 0
  std::vector<double> zbar;     ///< reactant fraction, increasing to 1
  std::vector<double> log_zbar; ///< ln zbar, finite even where zbar underflows
  std::vector<double> ubar;     ///< 1 + sqrt(1 - 2 q (1 - zbar) / omega)
  std::vector<double> ubar_xi;  ///< q phi(ubar) zbar / (omega (ubar - 1))
  double L = 0.0;
  double tail_decay_rate = 0.0;  ///< phi(u_minus)
  double error_estimate = 0.0;   ///< bound on sup-norm error in zbar
  std::size_t steps = 0;         ///< accepted integrator steps
  double q = 0.0;
  double omega = 1.0;

  std::size_t size() const { return xi.size(); }
};

struct ProfileOptions {
  /// Truncation length; defaults to 30 / min phi over [u_minus, 2], which is
  /// 30 / phi(u_minus) whenever phi is smallest at the burned state.
  std::optional<double> L;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t min_points = 2000;
};

/// ubar as a function of zbar through the conserved quantity
/// omega ubar^2/2 - omega ubar - q zbar = -q.
double profile_u(const ModelParams& p, double zbar);

/// Integrates zbar' = phi(ubar(zbar)) zbar backward from zbar(0) = 1.
/// Throws DomainError("ignition level too high") when u_i >= u_minus and
/// DomainError("truncation insufficient") when zbar(-L) > 10 abs_tol.
ProfileTable solve_profile(const ModelParams& p, const IgnitionFunction& phi,
                           const ProfileOptions& options = {});
ProfileTable solve_profile(const ModelParams& p, const IgnitionFunction& phi, double L,
                           double tol);

struct ShockTrace {
  double u_star;        ///< ubar(0-)
  double z_left;        ///< zbar(0-)
  double u_plus;        ///< ubar(0+)
  double z_plus;        ///< zbar(0+)
  double ubar_xi_left;  ///< ubar_xi(0-) = phi(2) q / omega
};

ShockTrace shock_trace(const ProfileTable& t);

}  // namespace detstab
