#include "oseval/curve.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace oseval {

Curve sweep(std::vector<double> y_scores, std::vector<double> x_scores,
            std::size_t y_denominator, std::size_t x_denominator, std::string x_label,
            std::string y_label) {
  std::sort(y_scores.begin(), y_scores.end(), std::greater<>());
  std::sort(x_scores.begin(), x_scores.end(), std::greater<>());

  Curve curve;
  curve.x_label = std::move(x_label);
  curve.y_label = std::move(y_label);
  curve.x_denominator = x_denominator;
  curve.y_denominator = y_denominator;
  curve.points.reserve(y_scores.size() + x_scores.size() + 1);
  curve.points.push_back({kInfinity, 0.0, 0.0, 0, 0});

  const double x_den = static_cast<double>(x_denominator);
  const double y_den = static_cast<double>(y_denominator);
  std::size_t yi = 0;
  std::size_t xi = 0;
  while (yi < y_scores.size() || xi < x_scores.size()) {
    double threshold = -kInfinity;
    if (yi < y_scores.size()) threshold = std::max(threshold, y_scores[yi]);
    if (xi < x_scores.size()) threshold = std::max(threshold, x_scores[xi]);
    while (yi < y_scores.size() && y_scores[yi] >= threshold) ++yi;
    while (xi < x_scores.size() && x_scores[xi] >= threshold) ++xi;
    curve.points.push_back({threshold, static_cast<double>(xi) / x_den,
                            static_cast<double>(yi) / y_den, xi, yi});
  }
  return curve;
}

std::optional<std::size_t> operating_point(const Curve& curve, double target) {
  if (!(target >= 0.0)) throw std::invalid_argument("operating-point target must be >= 0");
  // x is non-decreasing along the points.
  const auto it = std::upper_bound(curve.points.begin(), curve.points.end(), target,
                                   [](double t, const CurvePoint& p) { return t < p.x; });
  if (it == curve.points.begin()) return std::nullopt;
  return static_cast<std::size_t>(it - curve.points.begin()) - 1;
}

RankingRow sum_at_targets(const Curve& curve, const std::vector<double>& targets,
                          std::string method) {
  RankingRow row;
  row.method = std::move(method);
  for (const double target : targets) {
    TargetValue tv;
    tv.target = target;
    if (const auto idx = operating_point(curve, target)) {
      const auto& p = curve.points[*idx];
      tv.threshold = p.threshold;
      if (p.y_count > 0) {
        tv.achieved = true;
        tv.value = p.y;
        row.sum += p.y;
      }
    }
    row.values_at_targets.push_back(tv);
  }
  return row;
}

}  // namespace oseval
