#pragma once

#include <cstddef>
#include <vector>

#include "oseval/identification_eval.hpp"
#include "oseval/io.hpp"
#include "oseval/matching.hpp"

namespace oseval {

/// Matched detections of one method against one ground truth.
struct DetectionEvaluation {
  std::vector<ClassifiedDetection> classified;
  std::size_t num_images = 0;  // |I|
  std::size_t num_faces = 0;   // |M|, non-ignored faces
};

std::size_t count_evaluated_faces(const std::vector<GroundTruthFace>& faces);

DetectionEvaluation evaluate_detections(const GroundTruth& truth,
                                        const std::vector<Detection>& detections,
                                        double iou_threshold = kDefaultIouThreshold,
                                        unsigned workers = 1);

/// Matches score records as detections, then partitions probes for the
/// identification metrics.
IdentificationInput evaluate_identification(const GroundTruth& truth,
                                            const std::vector<SimilarityRecord>& records,
                                            const Gallery& gallery,
                                            double iou_threshold = kDefaultIouThreshold,
                                            unsigned workers = 1,
                                            ValidationReport* report = nullptr);

}  // namespace oseval
