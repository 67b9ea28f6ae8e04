#pragma once

#include <string>
#include <vector>

#include "oseval/curve.hpp"

namespace oseval {

struct NamedCurve {
  std::string name;
  Curve curve;
};

enum class AxisScale { linear, log10 };

struct AxesSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  AxisScale x_scale = AxisScale::log10;
};

/// Self-contained SVG line plot: one polyline per curve, a legend in input
/// order and decade gridlines on a log x-axis. On a log axis x = 0 is drawn at
/// half the smallest positive x and a footnote says so. Throws
/// std::invalid_argument for an empty curve, or when a log axis has no
/// positive x at all.
std::string render_svg(const std::vector<NamedCurve>& curves, const AxesSpec& axes);

}  // namespace oseval
