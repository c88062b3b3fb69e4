#pragma once

#include <cmath>

namespace detstab {

/// Parameters of a strong detonation in the original (unscaled) variables.
struct OriginalParams {
  double s = 1.0;       ///< wave speed
  double u_plus = 0.0;  ///< quiescent right state
  double u_star = 2.0;  ///< post-shock trace, u_star + u_plus = 2 s
  double q = 0.0;       ///< heat release
  double k = 1.0;       ///< reaction rate constant
  double u_i = 0.0;     ///< ignition level

  /// Builds the parameter set with u_star fixed by the Rankine-Hugoniot relation.
  static OriginalParams from_speed(double s, double u_plus, double q, double k, double u_i);

  /// Throws DomainError unless u_plus < s < u_star, u_star + u_plus = 2 s,
  /// u_plus < u_i, q >= 0 and k > 0.
  void validate() const;

  /// Root of the reacted end state, s + sqrt((s - u_plus)^2 - 2 q s).
  double u_minus() const;
};

/// Rescaled model parameters: speed 1, u_plus = 0, u_star = 2.
class ModelParams {
 public:
  /// Throws DomainError unless q >= 0, 0 < omega <= 1 and 2 q / omega < 1.
  ModelParams(double q, double omega);

  double q() const { return q_; }
  double omega() const { return omega_; }
  double q_over_omega() const { return q_ / omega_; }

  /// Burned end state 1 + sqrt(1 - 2 q / omega), in (1, 2].
  double u_minus() const { return u_minus_; }
  /// Lower endpoint of the criterion range (u_lim, 2].
  double u_lim() const { return u_minus_; }

  static constexpr double u_star = 2.0;
  static constexpr double u_plus = 0.0;
  static constexpr double z_plus = 1.0;
  static constexpr double z_minus = 0.0;

 private:
  double q_;
  double omega_;
  double u_minus_;
};

/// 1 + sqrt(1 - 2 q / omega); throws DomainError when 2 q / omega >= 1.
double u_minus(double q, double omega);

/// Affine map between original and rescaled variables.
///   u~ = (u - u_plus) / (s - u_plus),  x~ = x / s,  phi~(u~) = k phi(u)
struct RescaleMap {
  double s = 1.0;
  double u_plus = 0.0;
  double k = 1.0;

  double width() const { return s - u_plus; }
  double to_rescaled(double u) const { return (u - u_plus) / width(); }
  double to_original(double u_rescaled) const { return u_plus + width() * u_rescaled; }
};

struct Rescaled {
  ModelParams params;
  RescaleMap map;
  double u_i;  ///< ignition level in rescaled units
};

/// omega = (s - u_plus)/s, q~ = q/(s - u_plus). Throws DomainError when
/// s <= u_plus or the rescaled parameters are invalid.
Rescaled rescale(const OriginalParams& orig);

/// Inverse of rescale.
OriginalParams unrescale(const ModelParams& params, const RescaleMap& map, double u_i_rescaled);

}  // namespace detstab
