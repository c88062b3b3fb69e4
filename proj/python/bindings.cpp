#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "detstab/config.hpp"
#include "detstab/criterion.hpp"
#include "detstab/error.hpp"
#include "detstab/evans.hpp"
#include "detstab/figure.hpp"
#include "detstab/profile.hpp"
#include "detstab/sturm.hpp"
#include "detstab/sweep.hpp"

namespace py = pybind11;
using namespace detstab;

namespace {

py::array_t<double> as_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

TemperatureProfile temperature(const py::object& T) {
  if (py::isinstance<py::str>(T)) return TemperatureProfile::by_name(T.cast<std::string>());
  return T.cast<TemperatureProfile>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral stability of strong detonations in the rescaled Majda model";
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double>(), py::arg("q"), py::arg("omega") = 1.0)
      .def_property_readonly("q", &ModelParams::q)
      .def_property_readonly("omega", &ModelParams::omega)
      .def_property_readonly("u_minus", &ModelParams::u_minus)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(q=" + std::to_string(p.q()) + ", omega=" + std::to_string(p.omega()) + ")";
      });

  py::class_<TemperatureProfile>(m, "TemperatureProfile")
      .def_static("t1", &TemperatureProfile::t1)
      .def_static("t2", &TemperatureProfile::t2)
      .def_static("polynomial", &TemperatureProfile::polynomial, py::arg("coefficients"))
      .def_property_readonly("name", &TemperatureProfile::name)
      .def("__call__", [](const TemperatureProfile& T, double u) { return T(u).T; });

  py::class_<IgnitionFunction>(m, "IgnitionFunction")
      .def_static("step", &IgnitionFunction::step, py::arg("u_i"), py::arg("height") = 1.0)
      .def_static(
          "arrhenius",
          [](double C, double E, const py::object& T) {
            return IgnitionFunction::arrhenius(C, E, temperature(T));
          },
          py::arg("C"), py::arg("E"), py::arg("T"))
      .def_static(
          "arrhenius_normalized",
          [](double E, const py::object& T) {
            return IgnitionFunction::arrhenius_normalized(E, temperature(T));
          },
          py::arg("E"), py::arg("T"))
      .def_static("tabulated", &IgnitionFunction::tabulated, py::arg("u"), py::arg("phi"))
      .def_static("homotopy", &IgnitionFunction::homotopy, py::arg("r"), py::arg("target"),
                  py::arg("base"))
      .def_static("parse", &parse_ignition_spec, py::arg("spec"))
      .def("__call__", &IgnitionFunction::operator(), py::arg("u"))
      .def("derivative", [](const IgnitionFunction& f, double u) { return f.evaluate(u).du; })
      .def("log_derivative",
           [](const IgnitionFunction& f, double u) { return f.evaluate(u).log_du; })
      .def_property_readonly("ignition_level", &IgnitionFunction::ignition_level)
      .def("__repr__", &IgnitionFunction::describe);

  py::class_<ProfileTable>(m, "ProfileTable")
      .def_property_readonly("xi", [](const ProfileTable& t) { return as_array(t.xi); })
      .def_property_readonly("zbar", [](const ProfileTable& t) { return as_array(t.zbar); })
      .def_property_readonly("ubar", [](const ProfileTable& t) { return as_array(t.ubar); })
      .def_property_readonly("ubar_xi", [](const ProfileTable& t) { return as_array(t.ubar_xi); })
      .def_readonly("L", &ProfileTable::L)
      .def_readonly("tail_decay_rate", &ProfileTable::tail_decay_rate)
      .def_readonly("error_estimate", &ProfileTable::error_estimate)
      .def("__len__", &ProfileTable::size);

  m.def(
      "solve_profile",
      [](const ModelParams& p, const IgnitionFunction& phi, std::optional<double> L, double tol) {
        ProfileOptions o;
        o.L = L;
        o.abs_tol = o.rel_tol = tol;
        return solve_profile(p, phi, o);
      },
      py::arg("params"), py::arg("phi"), py::arg("L") = py::none(), py::arg("tol") = 1e-10);

  py::class_<CriterionReport>(m, "CriterionReport")
      .def_readonly("satisfied", &CriterionReport::satisfied)
      .def_readonly("worst_u", &CriterionReport::worst_u)
      .def_readonly("margin", &CriterionReport::margin)
      .def_readonly("u_lo", &CriterionReport::u_lo)
      .def_readonly("u_hi", &CriterionReport::u_hi)
      .def_readonly("borderline_ignition", &CriterionReport::borderline_ignition);

  m.def("check_criterion", &check_criterion, py::arg("params"), py::arg("phi"));
  m.def(
      "check_arrhenius",
      [](const ModelParams& p, double E, const py::object& T) {
        return check_arrhenius(p, E, temperature(T));
      },
      py::arg("params"), py::arg("E"), py::arg("T"));
  m.def(
      "critical_E", [](double r, const py::object& T) { return critical_E(r, temperature(T)); },
      py::arg("q_over_omega"), py::arg("T"));

  py::class_<SignScan>(m, "SignScan")
      .def_readonly("holds", &SignScan::holds)
      .def_readonly("max_value", &SignScan::max_value)
      .def_readonly("arg_max_xi", &SignScan::arg_max_xi);
  m.def(
      "sturm_coefficients",
      [](const ModelParams& p, const ProfileTable& t, const IgnitionFunction& phi) {
        const auto c = sl_coefficients(p, t, phi);
        py::dict d;
        d["xi"] = as_array(c.xi);
        d["f1"] = as_array(c.f1);
        d["f2"] = as_array(c.f2);
        d["f3"] = as_array(c.f3);
        d["f4"] = as_array(c.f4);
        d["sign_field"] = as_array(c.sign_field);
        return d;
      },
      py::arg("params"), py::arg("profile"), py::arg("phi"));
  m.def(
      "sign_condition",
      [](const ModelParams& p, const IgnitionFunction& phi) {
        return sign_condition_scan(sl_coefficients(p, solve_profile(p, phi), phi));
      },
      py::arg("params"), py::arg("phi"));
  m.def("boundary_slope", &boundary_slope, py::arg("params"), py::arg("phi"), py::arg("lam"));

  py::class_<WindingCertificate>(m, "WindingCertificate")
      .def_readonly("winding", &WindingCertificate::winding)
      .def_readonly("R", &WindingCertificate::R)
      .def_readonly("r0", &WindingCertificate::r0)
      .def_readonly("origin_included", &WindingCertificate::origin_included)
      .def_readonly("samples_used", &WindingCertificate::samples_used)
      .def_readonly("max_phase_step", &WindingCertificate::max_phase_step)
      .def_readonly("winding_real", &WindingCertificate::winding_real);

  py::class_<EvansFunction>(m, "EvansFunction")
      .def(py::init([](const ModelParams& p, const IgnitionFunction& phi) {
             return EvansFunction(p, phi);
           }),
           py::arg("params"), py::arg("phi"))
      .def("__call__", [](const EvansFunction& e, Complex l) { return e(l).delta; }, py::arg("lam"))
      .def("normalized", &EvansFunction::normalized, py::arg("lam"))
      .def_property_readonly("default_radius",
                             [](const EvansFunction& e) { return default_contour_radius(e.system()); })
      .def(
          "winding",
          [](const EvansFunction& e, std::optional<double> R, double r0, bool origin_included,
             unsigned threads) {
            WindingOptions o;
            o.origin_included = origin_included;
            o.threads = threads;
            return winding_count(e, R.value_or(default_contour_radius(e.system())), r0, o);
          },
          py::arg("R") = py::none(), py::arg("r0") = 1e-3, py::arg("origin_included") = false,
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  m.def(
      "sweep_json",
      [](const std::string& grid, const py::object& T, unsigned threads) {
        const auto spec = GridSpec::by_name(grid);
        const auto temp = py::isinstance<py::none>(T)
                              ? (grid == "bz-t2" ? TemperatureProfile::t2() : TemperatureProfile::t1())
                              : temperature(T);
        py::gil_scoped_release release;
        return to_json(run_sweep(spec, temp, threads)).dump();
      },
      py::arg("grid"), py::arg("T") = py::none(), py::arg("threads") = 0);
  m.def(
      "stability_svg",
      [](const std::string& grid, const py::object& T) {
        const auto spec = GridSpec::by_name(grid);
        const auto temp = py::isinstance<py::none>(T)
                              ? (grid == "bz-t2" ? TemperatureProfile::t2() : TemperatureProfile::t1())
                              : temperature(T);
        const auto rep = run_sweep(spec, temp);
        return emit_figure(rep, sample_critical_curve(temp, 0.005, 0.495, 200));
      },
      py::arg("grid"), py::arg("T") = py::none());
}
