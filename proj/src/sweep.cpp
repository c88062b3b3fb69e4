#include "detstab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "detstab/criterion.hpp"
#include "detstab/error.hpp"
#include "detstab/parallel.hpp"

namespace detstab {

namespace {

std::vector<Fraction> range(std::int64_t first, std::int64_t last, std::int64_t step,
                            std::int64_t den) {
  std::vector<Fraction> v;
  for (std::int64_t k = first; k <= last; k += step) v.push_back({k, den});
  return v;
}

void append(std::vector<Fraction>& a, const std::vector<Fraction>& b) {
  a.insert(a.end(), b.begin(), b.end());
}

bool less(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }

bool le(const Fraction& a, const Fraction& b) { return !less(b, a); }

std::vector<Fraction> bz_E_base() {
  auto E = range(0, 50, 1, 10);         // 0:0.1:5
  append(E, range(52, 100, 2, 10));     // 5.2:0.2:10
  append(E, {{12, 1}, {15, 1}});
  return E;
}

}  // namespace

std::size_t GridSpec::size() const {
  std::size_t n = 0;
  for (const auto& e : E_values_per_r) n += e.size();
  return n;
}

std::vector<GridPoint> GridSpec::points() const {
  std::vector<GridPoint> out;
  out.reserve(size());
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    for (const auto& E : E_values_per_r[i]) {
      out.push_back({r_values[i].num, r_values[i].den, E.num, E.den});
    }
  }
  std::sort(out.begin(), out.end(), [](const GridPoint& a, const GridPoint& b) {
    const Fraction ra{a.r_num, a.r_den}, rb{b.r_num, b.r_den};
    if (less(ra, rb)) return true;
    if (less(rb, ra)) return false;
    return less({a.E_num, a.E_den}, {b.E_num, b.E_den});
  });
  return out;
}

GridSpec GridSpec::bz_t1() {
  GridSpec g;
  g.name = "bz-t1";
  g.r_values = range(1, 49, 1, 100);
  auto E = bz_E_base();
  append(E, {{20, 1}, {30, 1}, {40, 1}});
  g.E_values_per_r.assign(g.r_values.size(), E);
  return g;
}

GridSpec GridSpec::bz_t2() {
  GridSpec g;
  g.name = "bz-t2";
  g.r_values = range(1, 37, 1, 100);
  g.r_values.push_back({375, 1000});
  append(g.r_values, range(38, 49, 1, 100));
  const auto base = bz_E_base();
  for (const auto& r : g.r_values) {
    auto E = base;
    if (le(r, {47, 100})) E.push_back({20, 1});
    if (le(r, {45, 100})) E.push_back({25, 1});
    if (le(r, {40, 100})) E.push_back({30, 1});
    g.E_values_per_r.push_back(std::move(E));
  }
  return g;
}

GridSpec GridSpec::custom(std::string name, std::vector<Fraction> r_values,
                          std::vector<Fraction> E_values) {
  GridSpec g;
  g.name = std::move(name);
  g.r_values = std::move(r_values);
  g.E_values_per_r.assign(g.r_values.size(), E_values);
  return g;
}

GridSpec GridSpec::by_name(const std::string& name) {
  if (name == "bz-t1") return bz_t1();
  if (name == "bz-t2") return bz_t2();
  throw DomainError("unknown grid '" + name + "' (expected bz-t1 or bz-t2)");
}

SweepReport run_sweep(const GridSpec& grid, const TemperatureProfile& T, unsigned threads) {
  for (const auto& r : grid.r_values) {
    if (!(r.value() > 0.0 && r.value() < 0.5)) {
      throw DomainError(fmt::format("grid value q/omega = {} outside (0, 1/2)", r.value()));
    }
  }
  const auto pts = grid.points();

  // One critical_E per distinct r.
  std::vector<double> distinct_r;
  for (const auto& p : pts) {
    if (distinct_r.empty() || distinct_r.back() != p.r()) distinct_r.push_back(p.r());
  }
  const auto e_star = parallel_map(
      distinct_r.size(), [&](std::size_t i) { return critical_E(distinct_r[i], T); }, threads);
  std::map<double, double> e_star_of;
  for (std::size_t i = 0; i < distinct_r.size(); ++i) e_star_of[distinct_r[i]] = e_star[i];

  SweepReport report;
  report.grid = grid.name;
  report.temperature = T.name();
  report.points = parallel_map(
      pts.size(),
      [&](std::size_t i) {
        SweepPoint sp;
        sp.point = pts[i];
        const double r = pts[i].r();
        const double E = pts[i].E();
        sp.E_star = e_star_of.at(r);
        sp.margin = check_arrhenius(ModelParams(r, 1.0), E, T).margin;
        sp.tie = std::isfinite(sp.E_star) &&
                 std::abs(E - sp.E_star) <= 1e-9 * std::max(1.0, sp.E_star);
        sp.satisfied = sp.tie || sp.margin <= 0.0;
        sp.satisfied_strict = !sp.tie && sp.margin <= 0.0;
        return sp;
      },
      threads);
  report.n_points = report.points.size();
  for (const auto& sp : report.points) {
    report.n_satisfied += sp.satisfied;
    report.n_satisfied_strict += sp.satisfied_strict;
    report.n_ties += sp.tie;
    if (!sp.satisfied) report.failures.push_back(sp.point);
  }
  return report;
}

nlohmann::json to_json(const SweepReport& report) {
  using nlohmann::json;
  const auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j;
  j["grid"] = report.grid;
  j["temperature"] = report.temperature;
  j["totals"] = {{"points", report.n_points},
                 {"satisfied", report.n_satisfied},
                 {"satisfied_strict", report.n_satisfied_strict},
                 {"ties", report.n_ties}};
  j["failures"] = json::array();
  for (const auto& f : report.failures) j["failures"].push_back({{"r", f.r()}, {"E", f.E()}});
  j["ties"] = json::array();
  j["points"] = json::array();
  for (const auto& sp : report.points) {
    if (sp.tie) j["ties"].push_back({{"r", sp.point.r()}, {"E", sp.point.E()}});
    j["points"].push_back({{"r", sp.point.r()},
                           {"E", sp.point.E()},
                           {"E_star", num(sp.E_star)},
                           {"satisfied", sp.satisfied}});
  }
  return j;
}

std::string to_csv(const SweepReport& report) {
  std::string out = "q_over_omega,E,E_star,satisfied\n";
  for (const auto& sp : report.points) {
    out += fmt::format("{},{},{},{}\n", sp.point.r(), sp.point.E(),
                       std::isfinite(sp.E_star) ? fmt::format("{}", sp.E_star) : "inf",
                       sp.satisfied ? "true" : "false");
  }
  return out;
}

std::vector<std::pair<double, double>> sample_critical_curve(const TemperatureProfile& T,
                                                             double r_min, double r_max,
                                                             std::size_t n) {
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = n == 1 ? r_min
                            : r_min + (r_max - r_min) * static_cast<double>(k) /
                                          static_cast<double>(n - 1);
    out.emplace_back(r, critical_E(r, T));
  }
  return out;
}

}  // namespace detstab
