#pragma once

#include <complex>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "detstab/ignition.hpp"
#include "detstab/params.hpp"

namespace detstab {

struct WaveConfig {
  ModelParams params;
  IgnitionFunction ignition;
};

/// Ignition from JSON:
///   {"kind": "step", "u_i": 1.2, "height": 1}
///   {"kind": "arrhenius", "E": 5, "T": "T1" | {"poly": [c0, c1, ...]}, "C": 1 | "normalize"}
///   {"kind": "tabulated", "u": [...], "phi": [...]}
///   {"kind": "homotopy", "r": 0.5, "target": {...}, "base": {...}}   (base defaults to a unit step)
IgnitionFunction ignition_from_json(const nlohmann::json& j);

/// {"q": ..., "omega": ..., "ignition": {...}}
WaveConfig wave_from_json(const nlohmann::json& j);
WaveConfig load_wave_config(const std::filesystem::path& path);

/// Compact command-line form:
///   step:<u_i>[:<height>]
///   arrhenius:<E>:<T1|T2>[:<C>|:norm]
///   homotopy:<r>:<target spec>      (base is a unit step at the target's ignition level)
IgnitionFunction parse_ignition_spec(const std::string& spec);

/// Parses "a+bi", "a-bi", "a", "bi".
std::complex<double> parse_complex(const std::string& text);

}  // namespace detstab
