#pragma once

#include <string>
#include <utility>
#include <vector>

#include "detstab/sweep.hpp"

namespace detstab {

struct FigureOptions {
  double width = 640.0;
  double height = 480.0;
  double r_max = 0.5;
  /// Upper E limit; <= 0 picks the largest grid E (or 40 for an empty report).
  double E_max = 0.0;
  std::string title;
};

/// Stability map: critical curve as a polyline, validated points as filled
/// circles, unvalidated points as crosses, axes labelled q/omega and E.
/// Byte-identical output for identical inputs.
std::string emit_figure(const SweepReport& report,
                        const std::vector<std::pair<double, double>>& curve,
                        const FigureOptions& options = {});

}  // namespace detstab
