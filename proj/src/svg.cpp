#include "oseval/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "oseval/csv.hpp"

namespace oseval {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 70.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

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

std::string num(double v) { return csv::format_fixed(v, 2); }

}  // namespace

std::string render_svg(const std::vector<NamedCurve>& curves, const AxesSpec& axes) {
  if (curves.empty()) throw std::invalid_argument("render_svg: no curves");
  double min_positive = kInfinity;
  double x_max = 0.0;
  double y_max = 0.0;
  for (const auto& c : curves) {
    if (c.curve.points.empty()) throw std::invalid_argument("render_svg: curve '" + c.name + "' is empty");
    for (const auto& p : c.curve.points) {
      if (p.x > 0.0) min_positive = std::min(min_positive, p.x);
      x_max = std::max(x_max, p.x);
      y_max = std::max(y_max, p.y);
    }
  }
  const bool log_x = axes.x_scale == AxisScale::log10;
  if (log_x && !std::isfinite(min_positive)) {
    throw std::invalid_argument("render_svg: log x-axis needs at least one positive x value");
  }

  bool clamped = false;
  const double zero_at = min_positive / 2.0;
  double x_lo = 0.0;
  double x_hi = x_max > 0.0 ? x_max : 1.0;
  int decade_lo = 0;
  int decade_hi = 0;
  if (log_x) {
    for (const auto& c : curves) {
      for (const auto& p : c.curve.points) clamped = clamped || p.x <= 0.0;
    }
    const double lowest = clamped ? zero_at : min_positive;
    decade_lo = static_cast<int>(std::floor(std::log10(lowest) + 1e-12));
    decade_hi = static_cast<int>(std::ceil(std::log10(x_max) - 1e-12));
    if (decade_hi <= decade_lo) decade_hi = decade_lo + 1;
    x_lo = decade_lo;
    x_hi = decade_hi;
  }
  const double y_hi = std::max(1.0, y_max);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) {
    const double v = log_x ? std::log10(x > 0.0 ? x : zero_at) : x;
    return kLeft + (v - x_lo) / (x_hi - x_lo) * plot_w;
  };
  const auto py = [&](double y) { return kTop + plot_h - y / y_hi * plot_h; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
  if (!axes.title.empty()) {
    s += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(axes.title) + "</text>\n";
  }

  // Gridlines and ticks.
  if (log_x) {
    for (int d = decade_lo; d <= decade_hi; ++d) {
      const double x = kLeft + (d - x_lo) / (x_hi - x_lo) * plot_w;
      s += "<line class=\"grid-x\" x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(kTop + plot_h) + "\" stroke=\"#cccccc\"/>\n";
      s += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + plot_h + 16) + "\" text-anchor=\"middle\">10<tspan dy=\"-5\" font-size=\"9\">" +
           std::to_string(d) + "</tspan></text>\n";
    }
  } else {
    for (int k = 0; k <= 4; ++k) {
      const double v = x_hi * k / 4.0;
      const double x = px(v);
      s += "<line class=\"grid-x\" x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(kTop + plot_h) + "\" stroke=\"#cccccc\"/>\n";
      s += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + plot_h + 16) + "\" text-anchor=\"middle\">" +
           csv::format_real(std::round(v * 1000.0) / 1000.0) + "</text>\n";
    }
  }
  for (int k = 0; k <= 5; ++k) {
    const double v = y_hi * k / 5.0;
    const double y = py(v);
    s += "<line class=\"grid-y\" x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + plot_w) +
         "\" y2=\"" + num(y) + "\" stroke=\"#eeeeee\"/>\n";
    s += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
         csv::format_fixed(v, 1) + "</text>\n";
  }
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) + "\" height=\"" +
       num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kTop + plot_h + 38) + "\" text-anchor=\"middle\">" +
       escape(axes.x_label) + (log_x ? " (log scale)" : "") + "</text>\n";
  s += "<text x=\"18\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       num(kTop + plot_h / 2) + ")\">" + escape(axes.y_label) + "</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = kPalette[i % kPalette.size()];
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& p : curves[i].curve.points) {
      if (!first) s += ' ';
      first = false;
      s += num(px(p.x)) + "," + num(py(p.y));
    }
    s += "\"/>\n";
    const double ly = kTop + 14 + 18.0 * static_cast<double>(i);
    const double lx = kLeft + plot_w + 12;
    s += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" +
         num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text class=\"legend\" x=\"" + num(lx + 26) + "\" y=\"" + num(ly) + "\">" + escape(curves[i].name) +
         "</text>\n";
  }

  if (clamped) {
    s += "<text class=\"footnote\" x=\"" + num(kLeft) + "\" y=\"" + num(kHeight - 8) +
         "\" font-size=\"10\">Note: " + escape(axes.x_label) + " = 0 drawn at " + csv::format_real(zero_at) +
         " (half the smallest positive value).</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace oseval
