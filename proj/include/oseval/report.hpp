#pragma once

#include <string>
#include <vector>

#include "oseval/curve.hpp"
#include "oseval/identification_eval.hpp"
#include "oseval/threshold_transfer.hpp"

namespace oseval {

enum class Task { detection, identification };

struct RankingTables {
  std::string markdown;
  std::string csv;
};

/// Ranking table: one row per method sorted by descending sum (then name),
/// a value column per target (empty when not achieved) and the sum. The
/// Markdown variant prints 4 decimals and bolds the best entry per column;
/// the CSV variant keeps full precision. Throws std::invalid_argument on an
/// empty row list.
RankingTables emit_ranking(std::vector<RankingRow> rows, Task task);

struct ClosedSetRow {
  std::string method;
  ClosedSetSummary summary;
};

/// `METHOD,TPDR,TPIR,FPIPI` with rates as fractions, full precision.
std::string closed_set_csv(const std::vector<ClosedSetRow>& rows);
/// Percentages with 2 decimals, FPIPI with 3.
std::string closed_set_markdown(const std::vector<ClosedSetRow>& rows);

/// `THRESHOLD,<x>,<y>` with shortest round-trip numbers; +inf prints as inf.
std::string curve_csv(const Curve& curve);

/// JSON sidecar describing how a curve was produced.
std::string curve_sidecar(const Curve& curve, double iou_threshold, const std::string& method);

/// `TARGET,THRESHOLD,CAL_X,EVAL_X,EVAL_Y,EVAL_Y_AT_EVAL_THRESHOLD`.
std::string transfer_csv(const TransferReport& report);

/// Validation issues as `SEVERITY,LOCATION,MESSAGE` followed by counts.
std::string validation_csv(const ValidationReport& report);

/// "10^-3" for exact decades, shortest decimal otherwise.
std::string target_label(double target);

}  // namespace oseval
