#pragma once

#include <optional>
#include <span>
#include <vector>

#include "oseval/curve.hpp"
#include "oseval/identification_eval.hpp"
#include "oseval/matching.hpp"

namespace oseval {

/// One budget: threshold picked on the calibration curve, the operating point
/// it yields on the evaluation data, and the point the evaluation data would
/// have picked for itself. Evaluation columns are empty when the budget was
/// not achieved on the calibration curve.
struct TransferRow {
  double target = 0.0;
  bool achieved = false;
  double threshold = kInfinity;  // copied from the calibration curve
  double calibrated_x = 0.0;
  std::optional<double> achieved_x;
  std::optional<double> achieved_y;
  std::optional<double> y_at_eval_threshold;
};

struct TransferReport {
  std::vector<TransferRow> rows;
};

/// Calibrate FPDPI budgets on `calibration` (a FROC) and apply the thresholds
/// to the evaluation detections.
TransferReport transfer_detection(const Curve& calibration,
                                  std::span<const ClassifiedDetection> eval_classified,
                                  std::size_t eval_num_images, std::size_t eval_num_faces,
                                  const std::vector<double>& targets = kDefaultTargets);

/// Same over FPIPI / TPIR with an O-ROC calibration curve.
TransferReport transfer_identification(const Curve& calibration,
                                       const IdentificationInput& eval_input,
                                       const std::vector<double>& targets = kDefaultTargets);

}  // namespace oseval
