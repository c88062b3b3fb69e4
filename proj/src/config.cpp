#include "detstab/config.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <vector>

#include "detstab/error.hpp"

namespace detstab {

namespace {

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError("cannot parse " + what + " from '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

TemperatureProfile temperature_from_json(const nlohmann::json& j) {
  if (j.is_string()) return TemperatureProfile::by_name(j.get<std::string>());
  if (j.is_object() && j.contains("poly")) {
    return TemperatureProfile::polynomial(j.at("poly").get<std::vector<double>>());
  }
  throw DomainError("temperature must be \"T1\", \"T2\" or {\"poly\": [...]}");
}

}  // namespace

IgnitionFunction ignition_from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "step") return IgnitionFunction::step(j.at("u_i").get<double>(), j.value("height", 1.0));
    if (kind == "arrhenius") {
      const double E = j.at("E").get<double>();
      auto T = temperature_from_json(j.at("T"));
      const auto C = j.value("C", nlohmann::json(1.0));
      if (C.is_string() && C.get<std::string>() == "normalize") {
        return IgnitionFunction::arrhenius_normalized(E, std::move(T));
      }
      return IgnitionFunction::arrhenius(C.get<double>(), E, std::move(T));
    }
    if (kind == "tabulated") {
      return IgnitionFunction::tabulated(j.at("u").get<std::vector<double>>(),
                                         j.at("phi").get<std::vector<double>>());
    }
    if (kind == "homotopy") {
      const auto target = ignition_from_json(j.at("target"));
      const auto base = j.contains("base") ? ignition_from_json(j.at("base"))
                                           : IgnitionFunction::step(target.ignition_level());
      return IgnitionFunction::homotopy(j.at("r").get<double>(), target, base);
    }
    throw DomainError("unknown ignition kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed ignition config: ") + e.what());
  }
}

WaveConfig wave_from_json(const nlohmann::json& j) {
  try {
    return WaveConfig{ModelParams(j.at("q").get<double>(), j.at("omega").get<double>()),
                      ignition_from_json(j.at("ignition"))};
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed wave config: ") + e.what());
  }
}

WaveConfig load_wave_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path.string());
  try {
    return wave_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

IgnitionFunction parse_ignition_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw DomainError("empty ignition spec");
  const auto& kind = parts[0];
  if (kind == "step" && (parts.size() == 2 || parts.size() == 3)) {
    return IgnitionFunction::step(to_number(parts[1], "ignition level"),
                                  parts.size() == 3 ? to_number(parts[2], "step height") : 1.0);
  }
  if (kind == "arrhenius" && (parts.size() == 3 || parts.size() == 4)) {
    const double E = to_number(parts[1], "activation energy");
    auto T = TemperatureProfile::by_name(parts[2]);
    if (parts.size() == 4 && parts[3] == "norm") {
      return IgnitionFunction::arrhenius_normalized(E, std::move(T));
    }
    const double C = parts.size() == 4 ? to_number(parts[3], "Arrhenius prefactor") : 1.0;
    return IgnitionFunction::arrhenius(C, E, std::move(T));
  }
  if (kind == "homotopy" && parts.size() >= 3) {
    const double r = to_number(parts[1], "homotopy parameter");
    const auto pos = spec.find(':', spec.find(':') + 1);
    const auto target = parse_ignition_spec(spec.substr(pos + 1));
    return IgnitionFunction::homotopy(r, target, IgnitionFunction::step(target.ignition_level()));
  }
  throw DomainError("bad ignition spec '" + spec +
                    "' (expected step:<u_i>[:<h>], arrhenius:<E>:<T1|T2>[:<C>|:norm] or "
                    "homotopy:<r>:<spec>)");
}

std::complex<double> parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  static const std::regex full(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]$)");
  static const std::regex imag(R"(^([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]$)");
  static const std::regex real(R"(^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$)");
  const auto coef = [](const std::string& c) {
    if (c.empty() || c == "+") return 1.0;
    if (c == "-") return -1.0;
    return std::stod(c);
  };
  std::smatch m;
  if (std::regex_match(s, m, full)) return {std::stod(m[1].str()), coef(m[2].str())};
  if (std::regex_match(s, m, imag)) return {0.0, coef(m[1].str())};
  if (std::regex_match(s, real)) return {std::stod(s), 0.0};
  throw DomainError("cannot parse complex number '" + text + "' (expected a+bi)");
}

}  // namespace detstab
