#pragma once

#include <functional>
#include <span>
#include <vector>

#include "detstab/ignition.hpp"
#include "detstab/params.hpp"

namespace detstab {

/// Outcome of the log-derivative test
///   (ln phi)'(u) <= 2 omega (u - 1) / (omega u^2 - 2 omega u + 2 q)  on (u_lim, 2].
struct CriterionReport {
  bool satisfied = true;
  double worst_u = 2.0;  ///< argmax of the margin
  double margin = 0.0;   ///< sup of lhs - rhs; satisfied iff margin <= 0
  double u_lo = 0.0;     ///< open lower end of the tested range
  double u_hi = 2.0;     ///< closed upper end
  /// Ignition level sits at (or below) the quiescent state u_plus, as for T(u) = u.
  bool borderline_ignition = false;
};

/// Right-hand side 2 omega (u - 1) / (omega u^2 - 2 omega u + 2 q).
double criterion_rhs(const ModelParams& p, double u);

struct Extremum {
  double u;
  double value;
};

/// Maximizes f on (lo, hi]: dense scan of n points starting at lo + 1e-9 (hi - lo),
/// golden-section refinement of the best bracket to |du| <= 1e-10, and the
/// closed endpoint hi as an explicit candidate. f may return -inf.
Extremum maximize_on_range(const std::function<double(double)>& f, double lo, double hi,
                           int n = 4096);

CriterionReport check_criterion(const ModelParams& p, const IgnitionFunction& phi);

/// Arrhenius specialization: E T_u / T^2 <= 2 (u - 1) / (u^2 - 2u + 2 q/omega).
CriterionReport check_arrhenius(const ModelParams& p, double E, const TemperatureProfile& T);

/// Largest activation energy passing check_arrhenius at q/omega = r:
///   inf over u in (u_lim, 2] with T_u > 0 of 2(u-1)/(u^2-2u+2r) * T^2/T_u.
/// Returns +inf when no u is active. Throws DomainError unless r in (0, 1/2).
double critical_E(double q_over_omega, const TemperatureProfile& T);

/// Same test in original variables:
///   (ln phi)'(u) <= (2u - u_* - u_+) / ((u - u_*)(u - u_+) + q (u_* + u_+))  on (u_-, u_*].
/// margin and worst_u are in original units.
CriterionReport check_criterion_original(const OriginalParams& orig,
                                         const IgnitionFunction& phi_original);

/// Reports for phi(r, .) = phi^r * base^(1 - r) over r_grid. The default base
/// is a unit step at phi's ignition level.
std::vector<CriterionReport> homotopy_family(const ModelParams& p, const IgnitionFunction& phi,
                                             std::span<const double> r_grid);
std::vector<CriterionReport> homotopy_family(const ModelParams& p, const IgnitionFunction& phi,
                                             const IgnitionFunction& base,
                                             std::span<const double> r_grid);

}  // namespace detstab
