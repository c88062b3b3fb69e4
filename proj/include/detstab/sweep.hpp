#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "detstab/ignition.hpp"

namespace detstab {

/// A grid point (q/omega, E) with both coordinates kept as exact fractions.
struct GridPoint {
  std::int64_t r_num, r_den;
  std::int64_t E_num, E_den;

  double r() const { return static_cast<double>(r_num) / static_cast<double>(r_den); }
  double E() const { return static_cast<double>(E_num) / static_cast<double>(E_den); }
};

struct Fraction {
  std::int64_t num, den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Parameter grid over q/omega and activation energy E. E-sets may differ per r.
struct GridSpec {
  std::string name;
  std::vector<Fraction> r_values;
  std::vector<std::vector<Fraction>> E_values_per_r;

  std::size_t size() const;
  std::vector<GridPoint> points() const;  ///< sorted by (r, E)

  /// {0.01:0.01:0.49} x {0:0.1:5, 5.2:0.2:10, 12, 15, 20, 30, 40}; 3969 points.
  static GridSpec bz_t1();
  /// Ragged grid of 4035 points: all r with E <= 15, then E = 20 up to r = 0.47,
  /// E = 25 up to 0.45 and E = 30 up to 0.40; r includes 0.375.
  static GridSpec bz_t2();
  /// Rectangular grid.
  static GridSpec custom(std::string name, std::vector<Fraction> r_values,
                         std::vector<Fraction> E_values);
  /// "bz-t1" or "bz-t2".
  static GridSpec by_name(const std::string& name);
};

struct SweepPoint {
  GridPoint point;
  double E_star = 0.0;   ///< critical activation energy at this r (+inf if none)
  double margin = 0.0;   ///< check_arrhenius margin
  bool tie = false;      ///< |E - E_star| <= 1e-9 max(1, E_star)
  bool satisfied = false;         ///< weak convention, ties satisfied
  bool satisfied_strict = false;  ///< strict convention, ties not satisfied
};

struct SweepReport {
  std::string grid;
  std::string temperature;
  std::vector<SweepPoint> points;  ///< sorted by (r, E)
  std::size_t n_points = 0;
  std::size_t n_satisfied = 0;
  std::size_t n_satisfied_strict = 0;
  std::size_t n_ties = 0;
  /// Weak-convention failures, n_satisfied + failures.size() = n_points.
  std::vector<GridPoint> failures;
};

/// Evaluates every grid point with check_arrhenius at omega = 1, q = r. Output
/// does not depend on the number of threads.
SweepReport run_sweep(const GridSpec& grid, const TemperatureProfile& T, unsigned threads = 0);

/// report.json layout; infinite E_star is written as null.
nlohmann::json to_json(const SweepReport& report);
/// Header q_over_omega,E,E_star,satisfied.
std::string to_csv(const SweepReport& report);

/// (r, critical_E(r)) at n evenly spaced r in [r_min, r_max].
std::vector<std::pair<double, double>> sample_critical_curve(const TemperatureProfile& T,
                                                             double r_min, double r_max,
                                                             std::size_t n);

}  // namespace detstab
