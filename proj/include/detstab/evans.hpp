#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "detstab/ignition.hpp"
#include "detstab/params.hpp"
#include "detstab/profile.hpp"

namespace detstab {

using Complex = std::complex<double>;
using CVec2 = std::array<Complex, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;
using CMat2 = std::array<std::array<Complex, 2>, 2>;

/// Linearized eigenvalue system (A v)' = (E - lambda) v on xi < 0 about a profile.
/// Coefficients are functions of zbar alone, since ubar is tied to zbar by the
/// conserved quantity.
class EigenSystem {
 public:
  EigenSystem(const ModelParams& p, const IgnitionFunction& phi);

  struct Coefficients {
    double ubar;
    double zbar;
    double phi;
    double phi_u;
    Mat2 A;
    Mat2 E;
    std::array<double, 2> W;  ///< (ubar, zbar)
    std::array<double, 2> R;  ///< (q phi zbar, -phi zbar)
  };
  Coefficients at(double zbar) const;

  /// (E - lambda) A^{-1}, the generator of y = A v.
  CMat2 generator(double zbar, Complex lambda) const;

  /// A^{-1}(-inf) (E(-inf) - lambda) as displayed for the v system.
  CMat2 limit_matrix(Complex lambda) const;
  /// {-lambda / sqrt(omega^2 - 2 q omega), lambda + phi(u_minus)}
  std::array<Complex, 2> limit_eigenvalues(Complex lambda) const;
  /// Gauge rate mu = lambda + phi(u_minus) of the decaying mode.
  Complex decay_rate(Complex lambda) const { return lambda + phi_minus_; }
  /// Eigenvector of the y-generator at xi = -inf for mu, second component 1.
  /// Throws DomainError("mode collision") when the two limit rates meet.
  CVec2 decaying_eigenvector(Complex lambda) const;

  /// [lambda W - R(W)] across xi = 0: (q phi(2) - 2 lambda, -phi(2)).
  CVec2 jump_vector(Complex lambda) const;

  const ModelParams& params() const { return p_; }
  const IgnitionFunction& ignition() const { return phi_; }
  double phi_minus() const { return phi_minus_; }
  double phi_star() const { return phi_star_; }

 private:
  ModelParams p_;
  IgnitionFunction phi_;
  double phi_minus_;
  double phi_star_;
};

/// Error control is relative: the gauged mode can shrink by many orders of
/// magnitude across the front when phi(u_minus) >> phi(2).
struct EvansOptions {
  double abs_tol = 1e-300;
  double rel_tol = 1e-11;
};

/// Decaying solution in the analytic gauge ytilde = exp(-mu (xi + L)) y, y = A v,
/// seeded with the limit eigenvector where zbar = max(zbar(-L), e^-36) and sampled
/// on the profile grid.
struct ModeSolution {
  std::vector<double> xi;
  std::vector<CVec2> y_gauged;
  Complex mu;
  double L;

  CVec2 at_shock() const { return y_gauged.back(); }
};

/// Requires Re lambda >= -phi(u_minus)/2.
ModeSolution decaying_mode(const EigenSystem& sys, const ProfileTable& t, Complex lambda,
                           const EvansOptions& options = {});

CVec2 jump_vector(const ModelParams& p, const IgnitionFunction& phi, Complex lambda);

struct EvansResult {
  Complex lambda;
  Complex delta;           ///< det[jump, ytilde(0)], analytic in lambda
  double gauge_log = 0.0;  ///< Re(mu) L, so |y(0)| = exp(gauge_log) |ytilde(0)|
};

EvansResult delta(const EigenSystem& sys, const ProfileTable& t, Complex lambda,
                  const EvansOptions& options = {});

/// Evans-Lopatinsky determinant bound to one wave. `normalized` multiplies by the
/// real constant that makes y(0) = R(W(0-)) at lambda = 0.
class EvansFunction {
 public:
  EvansFunction(const ModelParams& p, const IgnitionFunction& phi, ProfileTable profile,
                EvansOptions options = {});
  EvansFunction(const ModelParams& p, const IgnitionFunction& phi, EvansOptions options = {});

  EvansResult operator()(Complex lambda) const;
  Complex normalized(Complex lambda) const { return origin_scale_ * (*this)(lambda).delta; }
  double origin_scale() const { return origin_scale_; }

  const EigenSystem& system() const { return sys_; }
  const ProfileTable& profile() const { return profile_; }
  const EvansOptions& options() const { return options_; }

 private:
  EigenSystem sys_;
  ProfileTable profile_;
  EvansOptions options_;
  double origin_scale_;
};

struct ContourSample {
  int piece;  ///< 0 outer arc, 1 upper axis, 2 inner arc, 3 lower axis
  double t;   ///< parameter in [0, 1] along the piece
  Complex lambda;
  Complex delta;
};

/// Winding number of Delta around the boundary of {Re lambda >= 0, r0 <= |lambda| <= R},
/// traversed counterclockwise. With origin_included the inner arc bulges into
/// Re lambda < 0 so the translational zero lies inside.
struct WindingCertificate {
  int winding = 0;
  double R = 0.0;
  double r0 = 0.0;
  bool origin_included = false;
  std::size_t samples_used = 0;
  double max_phase_step = 0.0;  ///< largest |arg ratio| between adjacent samples
  double winding_real = 0.0;    ///< total phase change / 2 pi before rounding
  std::vector<ContourSample> samples;
};

struct WindingOptions {
  bool origin_included = false;
  std::size_t initial_samples_per_piece = 64;
  double phase_step_limit = 0.7853981633974483;  // pi / 4
  std::size_t sample_budget = 1000000;
  unsigned threads = 0;
};

/// Throws DomainError("unresolved phase") when refinement exceeds the sample budget.
WindingCertificate winding_count(const EvansFunction& evans, double R, double r0,
                                 const WindingOptions& options = {});

/// R = 10 max(1, phi(u_minus), 1/omega).
double default_contour_radius(const EigenSystem& sys);

/// Winding certificates along phi(r, .) = target^r base^(1-r), one per r.
std::vector<WindingCertificate> homotopy_track(const ModelParams& p,
                                               const IgnitionFunction& target,
                                               const IgnitionFunction& base,
                                               std::span<const double> r_grid, double R,
                                               double r0, const WindingOptions& options = {});

}  // namespace detstab
