#include "detstab/figure.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace detstab {

namespace {

constexpr double kLeft = 64.0, kRight = 24.0, kTop = 36.0, kBottom = 52.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_figure(const SweepReport& report,
                        const std::vector<std::pair<double, double>>& curve,
                        const FigureOptions& o) {
  double E_max = o.E_max;
  if (!(E_max > 0.0)) {
    E_max = 0.0;
    for (const auto& p : report.points) E_max = std::max(E_max, p.point.E());
    if (!(E_max > 0.0)) E_max = 40.0;
  }
  const double pw = o.width - kLeft - kRight;
  const double ph = o.height - kTop - kBottom;
  const auto X = [&](double r) { return kLeft + pw * r / o.r_max; };
  const auto Y = [&](double E) { return kTop + ph * (1.0 - E / E_max); };

  std::string s;
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      o.width, o.height, o.width, o.height);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += fmt::format(
      "<defs><clipPath id=\"plot\"><rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" "
      "height=\"{:.2f}\"/></clipPath></defs>\n",
      kLeft, kTop, pw, ph);
  if (!o.title.empty()) {
    s += fmt::format(
        "<text x=\"{:.2f}\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\">{}</text>\n",
        kLeft + 0.5 * pw, escape(o.title));
  }

  // Axes and ticks.
  s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\"/>\n", kLeft,
                   kTop + ph, kLeft + pw, kTop + ph);
  s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\"/>\n", kLeft, kTop,
                   kLeft, kTop + ph);
  s += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double r = o.r_max * k / 5.0;
    s += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>"
        "<text x=\"{0:.2f}\" y=\"{3:.2f}\">{4:.2f}</text>\n",
        X(r), kTop + ph, kTop + ph + 5.0, kTop + ph + 18.0, r);
  }
  for (int k = 0; k <= 5; ++k) {
    const double E = E_max * k / 5.0;
    s += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>"
        "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:g}</text>\n",
        kLeft - 5.0, Y(E), kLeft, kLeft - 8.0, Y(E) + 4.0, E);
  }
  s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">q/&#969;</text>\n", kLeft + 0.5 * pw,
                   o.height - 12.0);
  s += fmt::format(
      "<text x=\"16\" y=\"{0:.2f}\" transform=\"rotate(-90 16 {0:.2f})\">E</text>\n</g>\n",
      kTop + 0.5 * ph);

  // Critical curve; samples with infinite E* break the polyline.
  s += "<g clip-path=\"url(#plot)\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" fill=\"none\">\n";
  std::string run;
  const auto flush = [&] {
    if (!run.empty()) s += "<polyline points=\"" + run + "\"/>\n";
    run.clear();
  };
  for (const auto& [r, E] : curve) {
    if (!std::isfinite(E)) {
      flush();
      continue;
    }
    const double Ec = std::min(E, 4.0 * E_max);
    if (!run.empty()) run += ' ';
    run += fmt::format("{:.2f},{:.2f}", X(r), Y(Ec));
  }
  flush();
  s += "</g>\n";

  // Grid points.
  s += "<g clip-path=\"url(#plot)\">\n";
  for (const auto& p : report.points) {
    const double x = X(p.point.r());
    const double y = Y(p.point.E());
    if (p.satisfied) {
      s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.2\" fill=\"#2a9d4b\"/>\n", x, y);
    } else {
      s += fmt::format(
          "<path d=\"M{:.2f} {:.2f}l6 6m0 -6l-6 6\" stroke=\"#c0392b\" stroke-width=\"1.5\" "
          "class=\"unvalidated\"/>\n",
          x - 3.0, y - 3.0);
    }
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace detstab
