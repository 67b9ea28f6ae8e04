#include "oseval/threshold_transfer.hpp"

#include "oseval/detection_eval.hpp"

namespace oseval {

namespace {

template <typename PointAt>
TransferReport transfer(const Curve& calibration, const Curve& eval_curve,
                        const std::vector<double>& targets, PointAt point_at) {
  const auto cal_row = sum_at_targets(calibration, targets);
  const auto eval_row = sum_at_targets(eval_curve, targets);
  TransferReport report;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& cal = cal_row.values_at_targets[i];
    TransferRow row;
    row.target = targets[i];
    row.achieved = cal.achieved;
    if (cal.threshold) {
      row.threshold = *cal.threshold;
      row.calibrated_x = calibration.points[*operating_point(calibration, targets[i])].x;
    }
    if (row.achieved) {
      const CurvePoint p = point_at(row.threshold);
      row.achieved_x = p.x;
      row.achieved_y = p.y;
      row.y_at_eval_threshold = eval_row.values_at_targets[i].value;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

TransferReport transfer_detection(const Curve& calibration,
                                  std::span<const ClassifiedDetection> eval_classified,
                                  std::size_t eval_num_images, std::size_t eval_num_faces,
                                  const std::vector<double>& targets) {
  const auto eval_curve = froc(eval_classified, eval_num_images, eval_num_faces);
  return transfer(calibration, eval_curve, targets, [&](double threshold) {
    return froc_at(eval_classified, eval_num_images, eval_num_faces, threshold);
  });
}

TransferReport transfer_identification(const Curve& calibration,
                                       const IdentificationInput& eval_input,
                                       const std::vector<double>& targets) {
  const auto eval_curve = oroc(eval_input);
  return transfer(calibration, eval_curve, targets,
                  [&](double threshold) { return oroc_at(eval_input, threshold); });
}

}  // namespace oseval
