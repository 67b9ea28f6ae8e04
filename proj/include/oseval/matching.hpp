#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oseval/types.hpp"

namespace oseval {

/// Acceptance rule for a detection to certify a face: IoU >= 0.2.
inline constexpr double kDefaultIouThreshold = 0.2;

/// Jaccard index of two axis-aligned boxes, in [0, 1].
double iou(const BoundingBox& a, const BoundingBox& b);

struct MatchedPair {
  std::size_t detection = 0;
  std::size_t face = 0;
  double iou = 0.0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// One-to-one matching of a single image. Indices refer to the spans handed
/// to `assign`.
struct Assignment {
  std::vector<MatchedPair> pairs;  // in the order they were claimed
  std::vector<std::size_t> unmatched_detections;
  std::vector<std::size_t> unmatched_faces;
};

/// Greedy one-to-one matching. Detections claim faces in descending
/// confidence; each claims the still-free face of highest IoU among those at
/// or above `iou_threshold` (lower face index on ties). Among detections of
/// equal confidence, the one with the higher available IoU goes first, then
/// the lower row index.
Assignment assign(std::span<const GroundTruthFace> faces, std::span<const Detection> detections,
                  double iou_threshold = kDefaultIouThreshold);

enum class DetectionClass { positive, negative };

/// C+ / C- outcome of one detection. `index` and `matched_face` are indices
/// into whatever sequences the producing call documents.
struct ClassifiedDetection {
  std::size_t index = 0;
  double confidence = 0.0;
  DetectionClass cls = DetectionClass::negative;
  int matched_label = kUnknownLabel;          // meaningful iff positive
  std::optional<std::size_t> matched_face;    // present iff positive

  bool positive() const { return cls == DetectionClass::positive; }
};

/// Turns an assignment into C+ / C- labels, in detection order. Unmatched
/// detections that overlap an ignored face at or above the threshold are
/// dropped from the result (neither C+ nor C-). Indices are local to the
/// spans.
std::vector<ClassifiedDetection> classify(const Assignment& assignment,
                                          std::span<const GroundTruthFace> faces,
                                          std::span<const Detection> detections,
                                          std::span<const GroundTruthFace> ignored_faces,
                                          double iou_threshold = kDefaultIouThreshold);

/// Matches and classifies a whole dataset, one image at a time, in
/// `image_ids` order. `index` is the position in `detections`, `matched_face`
/// the position in `faces`. Faces flagged `ignore` never pair; detections on
/// images missing from `image_ids` are left out.
std::vector<ClassifiedDetection> classify_dataset(const std::vector<std::string>& image_ids,
                                                  const std::vector<GroundTruthFace>& faces,
                                                  const std::vector<Detection>& detections,
                                                  double iou_threshold = kDefaultIouThreshold,
                                                  unsigned workers = 1);

}  // namespace oseval
