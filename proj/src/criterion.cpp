#include "detstab/criterion.hpp"

#include <cmath>
#include <limits>

#include "detstab/error.hpp"

namespace detstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Log-derivative with the jump point of a step (or a blend containing one) ignored.
double log_derivative_or_ninf(const IgnitionFunction& phi, double u) {
  try {
    const auto v = phi.evaluate(u);
    return v.log_du ? *v.log_du : -kInf;
  } catch (const DomainError&) {
    return -kInf;
  }
}

CriterionReport make_report(const Extremum& e, double lo, double hi) {
  CriterionReport r;
  r.margin = e.value;
  r.worst_u = e.u;
  r.satisfied = !(e.value > 0.0);
  r.u_lo = lo;
  r.u_hi = hi;
  return r;
}

}  // namespace

double criterion_rhs(const ModelParams& p, double u) {
  const double w = p.omega();
  return 2.0 * w * (u - 1.0) / (w * u * u - 2.0 * w * u + 2.0 * p.q());
}

Extremum maximize_on_range(const std::function<double(double)>& f, double lo, double hi, int n) {
  if (!(hi > lo)) return Extremum{hi, -kInf};
  const double start = lo + 1e-9 * (hi - lo);
  const auto node = [&](int k) {
    return k == n - 1 ? hi : start + (hi - start) * static_cast<double>(k) / (n - 1);
  };
  int best = n - 1;
  double best_value = f(hi);
  for (int k = 0; k < n - 1; ++k) {
    const double v = f(node(k));
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  Extremum result{hi, best_value};
  if (best == n - 1) result.u = hi;
  else result.u = node(best);
  if (!std::isfinite(best_value)) return result;

  // Golden-section search on the bracket around the best node.
  double a = node(std::max(best - 1, 0));
  double b = node(std::min(best + 1, n - 1));
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double u_mid = 0.5 * (a + b);
  for (const auto& cand : {Extremum{c, fc}, Extremum{d, fd}, Extremum{u_mid, f(u_mid)}}) {
    if (cand.value > result.value) result = cand;
  }
  return result;
}

CriterionReport check_criterion(const ModelParams& p, const IgnitionFunction& phi) {
  const double lo = p.u_lim();
  const double hi = ModelParams::u_star;
  auto report = make_report(
      maximize_on_range(
          [&](double u) { return log_derivative_or_ninf(phi, u) - criterion_rhs(p, u); }, lo, hi),
      lo, hi);
  report.borderline_ignition = phi.ignition_level() <= ModelParams::u_plus;
  return report;
}

CriterionReport check_arrhenius(const ModelParams& p, double E, const TemperatureProfile& T) {
  const double lo = p.u_lim();
  const double hi = ModelParams::u_star;
  const auto lhs = [&](double u) {
    const auto t = T(u);
    if (!(t.T > 0.0)) return -kInf;
    return E * t.du / (t.T * t.T);
  };
  auto report = make_report(
      maximize_on_range([&](double u) { return lhs(u) - criterion_rhs(p, u); }, lo, hi), lo, hi);
  report.borderline_ignition =
      IgnitionFunction::arrhenius(1.0, E, T).ignition_level() <= ModelParams::u_plus;
  return report;
}

double critical_E(double r, const TemperatureProfile& T) {
  if (!(r > 0.0 && r < 0.5)) throw DomainError("critical_E requires q/omega in (0, 1/2)");
  const double lo = 1.0 + std::sqrt(1.0 - 2.0 * r);
  const auto ratio = [&](double u) {
    const auto t = T(u);
    if (!(t.du > 0.0) || !(t.T > 0.0)) return kInf;
    return 2.0 * (u - 1.0) / (u * u - 2.0 * u + 2.0 * r) * t.T * t.T / t.du;
  };
  const auto e = maximize_on_range([&](double u) { return -ratio(u); }, lo, 2.0);
  return -e.value;
}

CriterionReport check_criterion_original(const OriginalParams& orig,
                                         const IgnitionFunction& phi_original) {
  orig.validate();
  const double us = orig.u_star;
  const double up = orig.u_plus;
  const double lo = orig.u_minus();
  const auto rhs = [&](double u) {
    return (2.0 * u - us - up) / ((u - us) * (u - up) + orig.q * (us + up));
  };
  auto report = make_report(
      maximize_on_range(
          [&](double u) { return log_derivative_or_ninf(phi_original, u) - rhs(u); }, lo, us),
      lo, us);
  report.borderline_ignition = phi_original.ignition_level() <= up;
  return report;
}

std::vector<CriterionReport> homotopy_family(const ModelParams& p, const IgnitionFunction& phi,
                                             std::span<const double> r_grid) {
  return homotopy_family(p, phi, IgnitionFunction::step(phi.ignition_level()), r_grid);
}

std::vector<CriterionReport> homotopy_family(const ModelParams& p, const IgnitionFunction& phi,
                                             const IgnitionFunction& base,
                                             std::span<const double> r_grid) {
  std::vector<CriterionReport> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) out.push_back(check_criterion(p, IgnitionFunction::homotopy(r, phi, base)));
  return out;
}

}  // namespace detstab
