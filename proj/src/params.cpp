#include "detstab/params.hpp"

#include <cmath>
#include <string>

#include "detstab/error.hpp"

namespace detstab {

double u_minus(double q, double omega) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  const double ratio = 2.0 * q / omega;
  if (!(ratio < 1.0)) {
    throw DomainError("2q/omega = " + std::to_string(ratio) + " >= 1: burned state is not real");
  }
  return 1.0 + std::sqrt(1.0 - ratio);
}

ModelParams::ModelParams(double q, double omega) : q_(q), omega_(omega), u_minus_(0.0) {
  if (!std::isfinite(q) || q < 0.0) throw DomainError("q must be finite and non-negative");
  if (!std::isfinite(omega) || !(omega > 0.0) || omega > 1.0) {
    throw DomainError("omega must lie in (0, 1]");
  }
  u_minus_ = detstab::u_minus(q, omega);
}

OriginalParams OriginalParams::from_speed(double s, double u_plus, double q, double k, double u_i) {
  OriginalParams p{s, u_plus, 2.0 * s - u_plus, q, k, u_i};
  p.validate();
  return p;
}

void OriginalParams::validate() const {
  if (!(s > u_plus)) throw DomainError("wave speed must exceed u_plus (s > u_plus)");
  if (!(u_star > s)) throw DomainError("post-shock state must exceed the wave speed");
  const double scale = std::abs(s) + std::abs(u_plus) + std::abs(u_star);
  if (std::abs(u_star + u_plus - 2.0 * s) > 1e-12 * scale) {
    throw DomainError("Rankine-Hugoniot violated: u_star + u_plus != 2 s");
  }
  if (!(u_i > u_plus)) throw DomainError("ignition level must exceed u_plus");
  if (q < 0.0) throw DomainError("heat release must be non-negative");
  if (!(k > 0.0)) throw DomainError("rate constant must be positive");
}

double OriginalParams::u_minus() const {
  const double d = s - u_plus;
  const double disc = d * d - 2.0 * q * s;
  if (!(disc > 0.0)) throw DomainError("burned state is not real: (s-u_plus)^2 <= 2 q s");
  return s + std::sqrt(disc);
}

Rescaled rescale(const OriginalParams& orig) {
  if (!(orig.s > orig.u_plus)) throw DomainError("not a strong detonation ordering: s <= u_plus");
  orig.validate();
  const double d = orig.s - orig.u_plus;
  RescaleMap map{orig.s, orig.u_plus, orig.k};
  return Rescaled{ModelParams(orig.q / d, d / orig.s), map, map.to_rescaled(orig.u_i)};
}

OriginalParams unrescale(const ModelParams& params, const RescaleMap& map, double u_i_rescaled) {
  const double d = params.omega() * map.s;
  OriginalParams p;
  p.s = map.s;
  p.u_plus = map.s - d;
  p.u_star = 2.0 * map.s - p.u_plus;
  p.q = params.q() * d;
  p.k = map.k;
  p.u_i = p.u_plus + d * u_i_rescaled;
  return p;
}

}  // namespace detstab
