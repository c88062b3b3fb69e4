#include "detstab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "detstab/config.hpp"
#include "detstab/criterion.hpp"
#include "detstab/error.hpp"
#include "detstab/evans.hpp"
#include "detstab/figure.hpp"
#include "detstab/profile.hpp"
#include "detstab/sturm.hpp"
#include "detstab/sweep.hpp"

namespace detstab {

namespace {

using nlohmann::json;

struct WaveArgs {
  std::optional<double> q;
  std::optional<double> omega;
  std::string ignition;
  std::string config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--q", q, "rescaled heat release q >= 0");
    cmd->add_option("--omega", omega, "omega in (0, 1]");
    cmd->add_option("--ignition", ignition,
                    "step:<u_i>[:<h>] | arrhenius:<E>:<T1|T2>[:<C>|:norm] | homotopy:<r>:<spec>");
    cmd->add_option("--config", config, "JSON file {q, omega, ignition: {kind, ...}}");
  }

  WaveConfig resolve() const {
    if (!config.empty()) {
      auto w = load_wave_config(config);
      if (q || omega) w.params = ModelParams(q.value_or(w.params.q()), omega.value_or(w.params.omega()));
      if (!ignition.empty()) w.ignition = parse_ignition_spec(ignition);
      return w;
    }
    if (!q || !omega || ignition.empty()) {
      throw CLI::ValidationError("wave", "give --config or all of --q, --omega, --ignition");
    }
    return WaveConfig{ModelParams(*q, *omega), parse_ignition_spec(ignition)};
  }
};

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

json criterion_json(const CriterionReport& r) {
  return json{{"satisfied", r.satisfied},
              {"margin", number(r.margin)},
              {"worst_u", r.worst_u},
              {"u_range", json::array({r.u_lo, r.u_hi})},
              {"borderline_ignition", r.borderline_ignition}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral stability of strong detonation profiles", "detstab"};
  app.require_subcommand(1, 1);

  // profile
  WaveArgs profile_wave;
  std::optional<double> profile_L;
  double profile_tol = 1e-10;
  std::string profile_out;
  auto* profile = app.add_subcommand("profile", "solve the wave profile, CSV xi,zbar,ubar,ubar_xi");
  profile_wave.attach(profile);
  profile->add_option("--L", profile_L, "truncation length (default 30/phi(u_minus))");
  profile->add_option("--tol", profile_tol, "integrator tolerance");
  profile->add_option("--out", profile_out, "output CSV path (default stdout)");

  // criterion
  WaveArgs crit_wave;
  auto* criterion = app.add_subcommand("criterion", "check the log-derivative criterion, JSON report");
  crit_wave.attach(criterion);

  // curve
  std::string curve_T = "T1";
  double r_min = 0.005, r_max = 0.495;
  std::size_t curve_n = 100;
  std::string curve_out, curve_svg;
  auto* curve = app.add_subcommand("curve", "critical activation energy curve, CSV q_over_omega,E_star");
  curve->add_option("--temperature", curve_T, "T1 or T2");
  curve->add_option("--r-min", r_min, "smallest q/omega");
  curve->add_option("--r-max", r_max, "largest q/omega");
  curve->add_option("--n", curve_n, "number of samples")->check(CLI::PositiveNumber);
  curve->add_option("--out", curve_out, "output CSV path (default stdout)");
  curve->add_option("--svg", curve_svg, "also write the curve as SVG");

  // sturm
  WaveArgs sturm_wave;
  std::string sturm_out;
  bool sturm_summary = false;
  auto* sturm = app.add_subcommand("sturm", "reduction coefficients, CSV xi,f1,f2,f3,f4,sign_field");
  sturm_wave.attach(sturm);
  sturm->add_option("--out", sturm_out, "output CSV path (default stdout)");
  sturm->add_flag("--summary", sturm_summary, "print the sign-condition scan as JSON instead");

  // evans
  WaveArgs evans_wave;
  std::string lambda_text;
  bool do_count = false, include_origin = false, with_samples = false;
  std::optional<double> radius;
  double inner = 1e-3;
  unsigned evans_threads = 0;
  auto* evans = app.add_subcommand("evans", "Evans-Lopatinsky determinant and winding counts");
  evans_wave.attach(evans);
  evans->add_option("--lambda", lambda_text, "evaluate Delta at a+bi");
  evans->add_flag("--count", do_count, "winding number over the right half-plane D-contour");
  evans->add_option("--radius", radius, "outer radius R (default 10 max(1, phi(u_minus), 1/omega))");
  evans->add_option("--inner", inner, "inner radius r0 around the origin");
  evans->add_flag("--include-origin", include_origin, "bend the inner arc left, enclosing lambda = 0");
  evans->add_flag("--samples", with_samples, "include contour samples in the JSON");
  evans->add_option("--threads", evans_threads, "worker threads (0 = hardware)");

  // sweep
  std::string grid_name, sweep_T, sweep_out, sweep_csv, sweep_svg;
  unsigned sweep_threads = 0;
  auto* sweep = app.add_subcommand("sweep", "criterion sweep over a published parameter grid");
  sweep->add_option("--grid", grid_name, "bz-t1 or bz-t2")->required();
  sweep->add_option("--temperature", sweep_T, "T1 or T2 (default matches the grid)");
  sweep->add_option("--out", sweep_out, "report JSON path (default: totals to stdout)");
  sweep->add_option("--csv", sweep_csv, "per-point CSV path");
  sweep->add_option("--svg", sweep_svg, "stability map SVG path");
  sweep->add_option("--threads", sweep_threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*profile) {
      const auto w = profile_wave.resolve();
      ProfileOptions o;
      o.L = profile_L;
      o.abs_tol = o.rel_tol = profile_tol;
      const auto t = solve_profile(w.params, w.ignition, o);
      std::string csv = "xi,zbar,ubar,ubar_xi\n";
      for (std::size_t k = 0; k < t.size(); ++k) {
        csv += fmt::format("{},{},{},{}\n", t.xi[k], t.zbar[k], t.ubar[k], t.ubar_xi[k]);
      }
      write_text(profile_out, csv, out);
    } else if (*criterion) {
      const auto w = crit_wave.resolve();
      auto j = criterion_json(check_criterion(w.params, w.ignition));
      j["q"] = w.params.q();
      j["omega"] = w.params.omega();
      j["ignition"] = w.ignition.describe();
      out << j.dump(2) << "\n";
    } else if (*curve) {
      const auto T = TemperatureProfile::by_name(curve_T);
      const auto samples = sample_critical_curve(T, r_min, r_max, curve_n);
      std::string csv = "q_over_omega,E_star\n";
      for (const auto& [r, E] : samples) {
        csv += fmt::format("{},{}\n", r, std::isfinite(E) ? fmt::format("{}", E) : "inf");
      }
      write_text(curve_out, csv, out);
      if (!curve_svg.empty()) {
        SweepReport empty;
        FigureOptions fo;
        fo.title = "critical activation energy, " + T.name();
        write_text(curve_svg, emit_figure(empty, samples, fo), out);
      }
    } else if (*sturm) {
      const auto w = sturm_wave.resolve();
      const auto t = solve_profile(w.params, w.ignition);
      const auto c = sl_coefficients(w.params, t, w.ignition);
      if (sturm_summary) {
        const auto s = sign_condition_scan(c);
        out << json{{"holds", s.holds}, {"max_value", s.max_value}, {"arg_max_xi", s.arg_max_xi}}
                   .dump(2)
            << "\n";
      } else {
        std::string csv = "xi,f1,f2,f3,f4,sign_field\n";
        for (std::size_t k = 0; k < c.size(); ++k) {
          csv += fmt::format("{},{},{},{},{},{}\n", c.xi[k], c.f1[k], c.f2[k], c.f3[k], c.f4[k],
                             c.sign_field[k]);
        }
        write_text(sturm_out, csv, out);
      }
    } else if (*evans) {
      const auto w = evans_wave.resolve();
      if (lambda_text.empty() && !do_count) {
        throw CLI::ValidationError("evans", "give --lambda a+bi or --count");
      }
      const EvansFunction ev(w.params, w.ignition);
      json j;
      if (!lambda_text.empty()) {
        const auto lambda = parse_complex(lambda_text);
        const auto r = ev(lambda);
        j["lambda"] = complex_json(lambda);
        j["delta"] = complex_json(r.delta);
        j["delta_normalized"] = complex_json(ev.origin_scale() * r.delta);
        j["gauge_log"] = r.gauge_log;
      }
      if (do_count) {
        WindingOptions wo;
        wo.origin_included = include_origin;
        wo.threads = evans_threads;
        const double R = radius.value_or(default_contour_radius(ev.system()));
        const auto cert = winding_count(ev, R, inner, wo);
        json c{{"winding", cert.winding},
               {"R", cert.R},
               {"r0", cert.r0},
               {"samples_used", cert.samples_used},
               {"origin_included", cert.origin_included},
               {"max_phase_step", cert.max_phase_step}};
        if (with_samples) {
          c["samples"] = json::array();
          for (const auto& s : cert.samples) {
            c["samples"].push_back({{"lambda", complex_json(s.lambda)}, {"delta", complex_json(s.delta)}});
          }
        }
        if (lambda_text.empty()) j = std::move(c);
        else j["certificate"] = std::move(c);
      }
      out << j.dump(2) << "\n";
    } else if (*sweep) {
      const auto grid = GridSpec::by_name(grid_name);
      const auto T = TemperatureProfile::by_name(
          !sweep_T.empty() ? sweep_T : (grid_name == "bz-t2" ? "T2" : "T1"));
      const auto report = run_sweep(grid, T, sweep_threads);
      const auto j = to_json(report);
      if (!sweep_out.empty()) write_text(sweep_out, j.dump(2) + "\n", out);
      out << json{{"grid", report.grid}, {"totals", j["totals"]}, {"failures", j["failures"]}}.dump(2)
          << "\n";
      if (!sweep_csv.empty()) write_text(sweep_csv, to_csv(report), out);
      if (!sweep_svg.empty()) {
        FigureOptions fo;
        fo.title = report.grid + ", " + report.temperature;
        const auto curve_samples = sample_critical_curve(T, 0.005, 0.495, 197);
        write_text(sweep_svg, emit_figure(report, curve_samples, fo), out);
      }
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace detstab
