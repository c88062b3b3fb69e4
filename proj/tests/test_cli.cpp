#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "detstab/cli.hpp"
#include "detstab/config.hpp"
#include "detstab/error.hpp"

using namespace detstab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "detstab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "detstab_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("criterion subcommand") {
  const auto r = run({"criterion", "--q", "0.3", "--omega", "1", "--ignition", "step:1.2"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["satisfied"] == true);
  CHECK(j["worst_u"] == 2.0);
  CHECK(j["margin"].get<double>() == doctest::Approx(-1.0 / 0.3));

  const auto bad = run({"criterion", "--q", "0.2", "--omega", "1", "--ignition", "arrhenius:25:T2"});
  CHECK(bad.code == 0);
  CHECK(nlohmann::json::parse(bad.out)["satisfied"] == false);
}

TEST_CASE("sweep subcommand writes the report") {
  const auto path = scratch("report.json");
  const auto csv = scratch("report.csv");
  const auto svg = scratch("report.svg");
  const auto r = run({"sweep", "--grid", "bz-t1", "--out", path.string(), "--csv", csv.string(),
                      "--svg", svg.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["totals"]["points"] == 3969);
  CHECK(j["totals"]["satisfied"] == 3963);
  CHECK(first_line(slurp(csv)) == "q_over_omega,E,E_star,satisfied");
  CHECK(slurp(svg).rfind("<svg", 0) == 0);

  const auto t2 = run({"sweep", "--grid", "bz-t2"});
  CHECK(t2.code == 0);
  const auto j2 = nlohmann::json::parse(t2.out);
  CHECK(j2["totals"]["points"] == 4035);
  CHECK(j2["totals"]["satisfied_strict"] == 3851);
  CHECK(j2["totals"]["satisfied"] == 3854);
  CHECK(j2["totals"]["ties"] == 3);
}

TEST_CASE("profile and sturm CSV headers") {
  const auto p = run({"profile", "--q", "0.3", "--omega", "1", "--ignition", "step:0.5"});
  CHECK(p.code == 0);
  CHECK(first_line(p.out) == "xi,zbar,ubar,ubar_xi");
  // Round-trip formatting: the second row parses back to the profile's exact doubles.
  std::istringstream in(p.out);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(std::stod(line.substr(0, line.find(','))) == -30.0);

  const auto s = run({"sturm", "--q", "0.3", "--omega", "1", "--ignition", "arrhenius:5:T1:norm"});
  CHECK(s.code == 0);
  CHECK(first_line(s.out) == "xi,f1,f2,f3,f4,sign_field");
  const auto sum = run({"sturm", "--q", "0.3", "--omega", "1", "--ignition", "step:0.5", "--summary"});
  CHECK(nlohmann::json::parse(sum.out)["holds"] == true);

  const auto c = run({"curve", "--temperature", "T2", "--n", "5"});
  CHECK(c.code == 0);
  CHECK(first_line(c.out) == "q_over_omega,E_star");
}

TEST_CASE("evans subcommand") {
  const auto d = run({"evans", "--q", "0.3", "--omega", "1", "--ignition", "step:0.5", "--lambda", "0"});
  CHECK(d.code == 0);
  const auto jd = nlohmann::json::parse(d.out);
  CHECK(std::abs(jd["delta"][0].get<double>()) < 1e-8);
  const auto w = run({"evans", "--q", "0.3", "--omega", "1", "--ignition", "step:0.5", "--count"});
  CHECK(w.code == 0);
  const auto jw = nlohmann::json::parse(w.out);
  CHECK(jw["winding"] == 0);
  for (const char* key : {"winding", "R", "r0", "samples_used"}) CHECK(jw.contains(key));
  const auto wi = run({"evans", "--q", "0.3", "--omega", "1", "--ignition", "step:0.5", "--count",
                       "--include-origin"});
  CHECK(nlohmann::json::parse(wi.out)["winding"] == 1);
}

TEST_CASE("config file input") {
  const auto path = scratch("wave.json");
  std::ofstream(path) << R"({"q": 0.3, "omega": 1.0,
    "ignition": {"kind": "arrhenius", "E": 5, "T": "T1", "C": "normalize"}})";
  const auto r = run({"criterion", "--config", path.string()});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["satisfied"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run({"evans", "--q", "2", "--omega", "1", "--ignition", "step:0.5", "--lambda", "1"}).code == 1);
  CHECK(run({"criterion", "--q", "0.3", "--omega", "1", "--ignition", "step:1.9"}).code == 0);
  CHECK(run({"profile", "--q", "0.3", "--omega", "1", "--ignition", "step:1.9"}).code == 1);
  CHECK(run({"sweep", "--grid", "nope"}).code == 1);
  const auto unknown = run({"criterion", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK_FALSE(unknown.err.empty());
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"sweep"}).code == 2);
}

TEST_CASE("ignition and complex parsers") {
  CHECK(parse_ignition_spec("step:1.2").is_step());
  CHECK(parse_ignition_spec("step:1.2:2")(1.5) == 2.0);
  CHECK(parse_ignition_spec("arrhenius:5:T1:norm")(2.0) == doctest::Approx(1.0));
  CHECK(parse_ignition_spec("arrhenius:2:T2")(2.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(parse_ignition_spec("arrhenius:2:T2:3")(2.0) == doctest::Approx(3 * std::exp(-1.0)));
  CHECK(std::holds_alternative<IgnitionFunction::Homotopy>(
      parse_ignition_spec("homotopy:0.5:arrhenius:5:T1").variant()));
  CHECK_THROWS_AS(parse_ignition_spec("gauss:1"), DomainError);
  CHECK_THROWS_AS(parse_ignition_spec("step:abc"), DomainError);

  CHECK(parse_complex("1+2i") == std::complex<double>(1, 2));
  CHECK(parse_complex("-0.5-3i") == std::complex<double>(-0.5, -3));
  CHECK(parse_complex("2") == std::complex<double>(2, 0));
  CHECK(parse_complex("4i") == std::complex<double>(0, 4));
  CHECK(parse_complex("-i") == std::complex<double>(0, -1));
  CHECK(parse_complex("1e-3+2e2i") == std::complex<double>(1e-3, 200));
  CHECK_THROWS_AS(parse_complex("1+"), DomainError);

  CHECK_THROWS_AS(ignition_from_json(nlohmann::json::parse(R"({"kind": "nope"})")), DomainError);
  CHECK_THROWS_AS(wave_from_json(nlohmann::json::parse(R"({"q": 0.3})")), DomainError);
  const auto tab = ignition_from_json(
      nlohmann::json::parse(R"({"kind": "tabulated", "u": [0, 1, 2], "phi": [0, 0.5, 1]})"));
  CHECK(tab(1.0) == doctest::Approx(0.5));
}
