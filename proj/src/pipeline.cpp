#include "oseval/pipeline.hpp"

#include <algorithm>

namespace oseval {

std::size_t count_evaluated_faces(const std::vector<GroundTruthFace>& faces) {
  return static_cast<std::size_t>(
      std::count_if(faces.begin(), faces.end(), [](const auto& f) { return !f.ignore; }));
}

DetectionEvaluation evaluate_detections(const GroundTruth& truth,
                                        const std::vector<Detection>& detections,
                                        double iou_threshold, unsigned workers) {
  return {classify_dataset(truth.image_ids, truth.faces, detections, iou_threshold, workers),
          truth.image_ids.size(), count_evaluated_faces(truth.faces)};
}

IdentificationInput evaluate_identification(const GroundTruth& truth,
                                            const std::vector<SimilarityRecord>& records,
                                            const Gallery& gallery, double iou_threshold,
                                            unsigned workers, ValidationReport* report) {
  std::vector<Detection> detections;
  detections.reserve(records.size());
  for (const auto& r : records) detections.push_back(r.detection);
  const auto classified =
      classify_dataset(truth.image_ids, truth.faces, detections, iou_threshold, workers);
  return build_identification_input(truth.faces, classified, records, gallery,
                                    truth.image_ids.size(), report);
}

}  // namespace oseval
