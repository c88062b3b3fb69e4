#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "detstab/params.hpp"

namespace detstab {

/// Value of an ignition function and its first two u-derivatives.
struct IgnitionValue {
  double value = 0.0;
  double du = 0.0;
  double duu = 0.0;
  /// d/du ln(phi); empty at or below the ignition level, where phi = 0.
  std::optional<double> log_du;
  /// d^2/du^2 ln(phi); empty below ignition.
  std::optional<double> log_duu;

  bool below_ignition() const { return !log_du.has_value(); }
};

/// Temperature law T(u) used inside the Arrhenius rate.
class TemperatureProfile {
 public:
  struct Sample {
    double T;
    double du;
    double duu;
  };
  using Law = std::function<Sample(double)>;

  enum class Kind { T1, T2, Custom };

  /// T(u) = 1 - (u - 1.5)^2
  static TemperatureProfile t1();
  /// T(u) = u
  static TemperatureProfile t2();
  /// Arbitrary law; the callable returns T and its first two derivatives.
  static TemperatureProfile custom(std::string name, Law law);
  /// Polynomial sum_k c[k] u^k with exact derivatives.
  static TemperatureProfile polynomial(std::vector<double> coefficients);

  /// Accepts "T1" / "T2" (case-insensitive).
  static TemperatureProfile by_name(const std::string& name);

  Sample operator()(double u) const { return law_(u); }
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  TemperatureProfile(Kind kind, std::string name, Law law)
      : kind_(kind), name_(std::move(name)), law_(std::move(law)) {}

  Kind kind_;
  std::string name_;
  Law law_;
};

/// Reaction-rate switch phi(u): zero at or below an ignition level, positive above.
///
/// Cheap to copy; the variant tree is shared and immutable.
class IgnitionFunction {
 public:
  struct Step {
    double u_i;
    double height;
  };
  struct Arrhenius {
    double C;
    double E;
    TemperatureProfile T;
  };
  struct Tabulated {
    std::vector<double> u;
    std::vector<double> phi;
    std::vector<double> slope;  // monotone cubic (Fritsch-Carlson) node slopes
  };
  struct Homotopy {
    double r;
    std::shared_ptr<const IgnitionFunction> target;
    std::shared_ptr<const IgnitionFunction> base;
  };
  struct Rescaled {
    RescaleMap map;
    std::shared_ptr<const IgnitionFunction> original;
  };
  using Variant = std::variant<Step, Arrhenius, Tabulated, Homotopy, Rescaled>;

  static IgnitionFunction step(double u_i, double height = 1.0);
  static IgnitionFunction arrhenius(double C, double E, TemperatureProfile T);
  /// Arrhenius law with C chosen so that phi(2) = 1.
  static IgnitionFunction arrhenius_normalized(double E, TemperatureProfile T);
  /// Monotone cubic through (u[k], phi[k]); phi must vanish on a leading run of
  /// samples and be positive afterwards. Constant extrapolation past the ends.
  static IgnitionFunction tabulated(std::vector<double> u, std::vector<double> phi);
  /// phi(r, u) = target(u)^r * base(u)^(1 - r), r in [0, 1].
  static IgnitionFunction homotopy(double r, const IgnitionFunction& target,
                                   const IgnitionFunction& base);
  /// phi~(u~) = k * phi(u_plus + (s - u_plus) u~): an original-coordinate law
  /// seen in rescaled coordinates.
  static IgnitionFunction rescaled(const IgnitionFunction& original, const RescaleMap& map);

  /// Throws DomainError when asked for derivatives at a step's jump point.
  IgnitionValue evaluate(double u) const;
  double operator()(double u) const { return evaluate(u).value; }

  /// Supremum of {u : phi(u) = 0} on the physical range.
  double ignition_level() const;

  const Variant& variant() const { return *impl_; }
  bool is_step() const { return std::holds_alternative<Step>(*impl_); }
  std::string describe() const;

 private:
  explicit IgnitionFunction(Variant v) : impl_(std::make_shared<const Variant>(std::move(v))) {}
  std::shared_ptr<const Variant> impl_;
};

}  // namespace detstab
