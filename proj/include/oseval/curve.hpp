#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace oseval {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One operating point. Rates are stored alongside the integer counts they
/// were computed from so that identities between curves can be checked
/// exactly.
struct CurvePoint {
  double threshold = kInfinity;
  double x = 0.0;
  double y = 0.0;
  std::size_t x_count = 0;
  std::size_t y_count = 0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Threshold-indexed metric curve. Points are ordered by strictly decreasing
/// threshold, starting at +inf.
struct Curve {
  std::vector<CurvePoint> points;
  std::string x_label;
  std::string y_label;
  std::size_t x_denominator = 0;
  std::size_t y_denominator = 0;

  friend bool operator==(const Curve&, const Curve&) = default;
};

/// Default operating budgets 10^-3 .. 10^0.
inline const std::vector<double> kDefaultTargets = {1e-3, 1e-2, 1e-1, 1.0};

/// Counts how many of `y_scores` and `x_scores` reach each candidate
/// threshold (score >= threshold). Candidates are +inf followed by every
/// distinct score of either set, descending.
Curve sweep(std::vector<double> y_scores, std::vector<double> x_scores,
            std::size_t y_denominator, std::size_t x_denominator, std::string x_label,
            std::string y_label);

/// Index of the point with the smallest threshold whose x does not exceed
/// `target`; nullopt when no point qualifies. Throws std::invalid_argument for
/// a negative target.
std::optional<std::size_t> operating_point(const Curve& curve, double target);

struct TargetValue {
  double target = 0.0;
  double value = 0.0;
  bool achieved = false;
  std::optional<double> threshold;

  friend bool operator==(const TargetValue&, const TargetValue&) = default;
};

struct RankingRow {
  std::string method;
  std::vector<TargetValue> values_at_targets;
  double sum = 0.0;

  friend bool operator==(const RankingRow&, const RankingRow&) = default;
};

/// Reads y at the operating point of every target. A target counts as
/// achieved only when its operating point passes at least one y-event (a
/// budget met only by thresholds that accept no true positives is reported
/// empty); unachieved targets add 0 to the sum.
RankingRow sum_at_targets(const Curve& curve, const std::vector<double>& targets,
                          std::string method = {});

}  // namespace oseval
