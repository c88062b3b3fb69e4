#include "detstab/ignition.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "detstab/error.hpp"

namespace detstab {

namespace {

IgnitionValue below() { return IgnitionValue{}; }

IgnitionValue from_log(double value, double log_du, double log_duu) {
  IgnitionValue v;
  v.value = value;
  v.du = value * log_du;
  v.duu = value * (log_du * log_du + log_duu);
  v.log_du = log_du;
  v.log_duu = log_duu;
  return v;
}

std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), m(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    m[0] = m[1] = delta[0];
    return m;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double a = delta[k - 1];
    const double b = delta[k];
    if (a == 0.0 || b == 0.0 || (a > 0.0) != (b > 0.0)) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    m[k] = (w1 + w2) / (w1 / a + w2 / b);
  }
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if ((s > 0.0) != (d0 > 0.0) || d0 == 0.0) return 0.0;
    if ((d0 > 0.0) != (d1 > 0.0) && std::abs(s) > 3.0 * std::abs(d0)) s = 3.0 * d0;
    return s;
  };
  m[0] = endpoint(h[0], h[1], delta[0], delta[1]);
  m[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return m;
}

IgnitionValue eval_step(const IgnitionFunction::Step& s, double u) {
  if (u == s.u_i) throw DomainError("step ignition derivative is undefined at the jump point");
  if (u < s.u_i) return below();
  return from_log(s.height, 0.0, 0.0);
}

IgnitionValue eval_arrhenius(const IgnitionFunction::Arrhenius& a, double u) {
  const auto t = a.T(u);
  if (!(t.T > 0.0)) return below();
  const double value = a.C * std::exp(-a.E / t.T);
  if (!(value > 0.0)) return below();
  const double log_du = a.E * t.du / (t.T * t.T);
  const double log_duu = a.E * (t.duu / (t.T * t.T) - 2.0 * t.du * t.du / (t.T * t.T * t.T));
  return from_log(value, log_du, log_duu);
}

IgnitionValue eval_tabulated(const IgnitionFunction::Tabulated& tab, double u) {
  const auto& x = tab.u;
  const auto& y = tab.phi;
  IgnitionValue v;
  if (u <= x.front() || u >= x.back()) {
    v.value = u <= x.front() ? y.front() : y.back();
  } else {
    const auto it = std::upper_bound(x.begin(), x.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - x.begin()) - 1;
    const double h = x[k + 1] - x[k];
    const double t = (u - x[k]) / h;
    const double y0 = y[k], y1 = y[k + 1];
    const double m0 = h * tab.slope[k], m1 = h * tab.slope[k + 1];
    const double t2 = t * t, t3 = t2 * t;
    v.value = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
              (t3 - t2) * m1;
    v.du = ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * y1 +
            (3 * t2 - 2 * t) * m1) / h;
    v.duu = ((12 * t - 6) * y0 + (6 * t - 4) * m0 + (-12 * t + 6) * y1 + (6 * t - 2) * m1) /
            (h * h);
  }
  if (!(v.value > 0.0)) return below();
  const double ld = v.du / v.value;
  v.log_du = ld;
  v.log_duu = v.duu / v.value - ld * ld;
  return v;
}

IgnitionValue eval_homotopy(const IgnitionFunction::Homotopy& h, double u) {
  if (h.r == 1.0) return h.target->evaluate(u);
  if (h.r == 0.0) return h.base->evaluate(u);
  const auto a = h.target->evaluate(u);
  const auto b = h.base->evaluate(u);
  if (a.below_ignition() || b.below_ignition()) return below();
  const double value = std::exp(h.r * std::log(a.value) + (1.0 - h.r) * std::log(b.value));
  return from_log(value, h.r * *a.log_du + (1.0 - h.r) * *b.log_du,
                  h.r * *a.log_duu + (1.0 - h.r) * *b.log_duu);
}

IgnitionValue eval_rescaled(const IgnitionFunction::Rescaled& r, double u) {
  const double d = r.map.width();
  const auto inner = r.original->evaluate(r.map.to_original(u));
  if (inner.below_ignition()) return below();
  return from_log(r.map.k * inner.value, d * *inner.log_du, d * d * *inner.log_duu);
}

// Largest u in [0, 2] with T(u) <= 0, by scan then bisection.
double temperature_cutoff(const TemperatureProfile& T) {
  constexpr int n = 4000;
  constexpr double lo = 0.0, hi = 2.0;
  int last = -1;
  for (int k = 0; k <= n; ++k) {
    if (!(T(lo + (hi - lo) * k / n).T > 0.0)) last = k;
  }
  if (last < 0) return -std::numeric_limits<double>::infinity();
  if (last == n) return hi;
  double a = lo + (hi - lo) * last / n;
  double b = lo + (hi - lo) * (last + 1) / n;
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double mid = 0.5 * (a + b);
    (T(mid).T > 0.0 ? b : a) = mid;
  }
  return a;
}

}  // namespace

TemperatureProfile TemperatureProfile::t1() {
  return TemperatureProfile(Kind::T1, "T1", [](double u) {
    const double d = u - 1.5;
    return Sample{1.0 - d * d, -2.0 * d, -2.0};
  });
}

TemperatureProfile TemperatureProfile::t2() {
  return TemperatureProfile(Kind::T2, "T2", [](double u) { return Sample{u, 1.0, 0.0}; });
}

TemperatureProfile TemperatureProfile::custom(std::string name, Law law) {
  if (!law) throw DomainError("custom temperature law is empty");
  return TemperatureProfile(Kind::Custom, std::move(name), std::move(law));
}

TemperatureProfile TemperatureProfile::polynomial(std::vector<double> c) {
  if (c.empty()) throw DomainError("temperature polynomial needs at least one coefficient");
  std::string name = "poly(";
  for (std::size_t k = 0; k < c.size(); ++k) name += fmt::format("{}{}", k ? "," : "", c[k]);
  name += ")";
  return custom(name, [c = std::move(c)](double u) {
    // Horner on value, first and second derivative together.
    double p = 0.0, dp = 0.0, ddp = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      ddp = ddp * u + 2.0 * dp;
      dp = dp * u + p;
      p = p * u + *it;
    }
    return Sample{p, dp, ddp};
  });
}

TemperatureProfile TemperatureProfile::by_name(const std::string& name) {
  std::string n;
  for (char ch : name) n += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (n == "T1") return t1();
  if (n == "T2") return t2();
  throw DomainError("unknown temperature profile '" + name + "' (expected T1 or T2)");
}

IgnitionFunction IgnitionFunction::step(double u_i, double height) {
  if (!std::isfinite(u_i)) throw DomainError("step ignition level must be finite");
  if (!(height > 0.0)) throw DomainError("step height must be positive");
  return IgnitionFunction(Step{u_i, height});
}

IgnitionFunction IgnitionFunction::arrhenius(double C, double E, TemperatureProfile T) {
  if (!(C > 0.0) || !std::isfinite(C)) throw DomainError("Arrhenius prefactor must be positive");
  if (!(E >= 0.0) || !std::isfinite(E)) throw DomainError("activation energy must be >= 0");
  return IgnitionFunction(Arrhenius{C, E, std::move(T)});
}

IgnitionFunction IgnitionFunction::arrhenius_normalized(double E, TemperatureProfile T) {
  const double T2 = T(ModelParams::u_star).T;
  if (!(T2 > 0.0)) throw DomainError("temperature must be positive at the shock state u = 2");
  return arrhenius(std::exp(E / T2), E, std::move(T));
}

IgnitionFunction IgnitionFunction::tabulated(std::vector<double> u, std::vector<double> phi) {
  if (u.size() != phi.size() || u.size() < 2) {
    throw DomainError("tabulated ignition needs >= 2 (u, phi) pairs of equal length");
  }
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    if (!(u[k + 1] > u[k])) throw DomainError("tabulated u samples must be strictly increasing");
  }
  if (phi.front() != 0.0) throw DomainError("tabulated ignition must start with phi = 0");
  bool ignited = false;
  for (double v : phi) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("tabulated phi must be finite and >= 0");
    if (v > 0.0) ignited = true;
    if (ignited && v == 0.0) {
      throw DomainError("tabulated phi must be zero up to the ignition level and positive after");
    }
  }
  auto slope = monotone_slopes(u, phi);
  return IgnitionFunction(Tabulated{std::move(u), std::move(phi), std::move(slope)});
}

IgnitionFunction IgnitionFunction::homotopy(double r, const IgnitionFunction& target,
                                            const IgnitionFunction& base) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("homotopy parameter must lie in [0, 1]");
  return IgnitionFunction(Homotopy{r, std::make_shared<const IgnitionFunction>(target),
                                   std::make_shared<const IgnitionFunction>(base)});
}

IgnitionFunction IgnitionFunction::rescaled(const IgnitionFunction& original,
                                            const RescaleMap& map) {
  if (!(map.width() > 0.0)) throw DomainError("rescaling requires s > u_plus");
  if (!(map.k > 0.0)) throw DomainError("rate constant must be positive");
  return IgnitionFunction(Rescaled{map, std::make_shared<const IgnitionFunction>(original)});
}

IgnitionValue IgnitionFunction::evaluate(double u) const {
  return std::visit(
      [u](const auto& v) -> IgnitionValue {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Step>) return eval_step(v, u);
        else if constexpr (std::is_same_v<T, Arrhenius>) return eval_arrhenius(v, u);
        else if constexpr (std::is_same_v<T, Tabulated>) return eval_tabulated(v, u);
        else if constexpr (std::is_same_v<T, Homotopy>) return eval_homotopy(v, u);
        else return eval_rescaled(v, u);
      },
      *impl_);
}

double IgnitionFunction::ignition_level() const {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Step>) {
          return v.u_i;
        } else if constexpr (std::is_same_v<T, Arrhenius>) {
          return temperature_cutoff(v.T);
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          std::size_t last = 0;
          for (std::size_t k = 0; k < v.phi.size(); ++k) {
            if (v.phi[k] == 0.0) last = k;
          }
          return v.u[last];
        } else if constexpr (std::is_same_v<T, Homotopy>) {
          if (v.r == 1.0) return v.target->ignition_level();
          if (v.r == 0.0) return v.base->ignition_level();
          return std::max(v.target->ignition_level(), v.base->ignition_level());
        } else {
          return v.map.to_rescaled(v.original->ignition_level());
        }
      },
      *impl_);
}

std::string IgnitionFunction::describe() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Step>) {
          return fmt::format("step(u_i={},height={})", v.u_i, v.height);
        } else if constexpr (std::is_same_v<T, Arrhenius>) {
          return fmt::format("arrhenius(C={},E={},T={})", v.C, v.E, v.T.name());
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          return fmt::format("tabulated(n={})", v.u.size());
        } else if constexpr (std::is_same_v<T, Homotopy>) {
          return fmt::format("homotopy(r={},{},{})", v.r, v.target->describe(),
                             v.base->describe());
        } else {
          return fmt::format("rescaled(s={},u_plus={},k={},{})", v.map.s, v.map.u_plus, v.map.k,
                             v.original->describe());
        }
      },
      *impl_);
}

}  // namespace detstab
