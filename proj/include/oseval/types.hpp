#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace oseval {

/// Subject label carried by faces that belong to nobody on the watchlist.
inline constexpr int kUnknownLabel = -1;

/// Axis-aligned box in pixel coordinates, (x, y) is the top-left corner.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
  double right() const { return x + width; }
  double bottom() const { return y + height; }
  bool valid() const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct GroundTruthFace {
  std::string image_id;
  std::string face_id;
  int subject_label = kUnknownLabel;
  BoundingBox box;
  bool ignore = false;

  bool is_unknown() const { return subject_label == kUnknownLabel; }

  friend bool operator==(const GroundTruthFace&, const GroundTruthFace&) = default;
};

struct Detection {
  std::string image_id;
  double confidence = 0.0;
  BoundingBox box;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Enrolled watchlist. The order of `subject_ids` is the column order of
/// every similarity row.
struct Gallery {
  std::vector<int> subject_ids;

  std::size_t size() const { return subject_ids.size(); }
  std::optional<std::size_t> position_of(int subject_id) const;

  friend bool operator==(const Gallery&, const Gallery&) = default;
};

/// A detection together with its similarity to every gallery subject.
/// `scores[i]` belongs to `gallery.subject_ids[i]`; larger is more similar.
struct SimilarityRecord {
  Detection detection;
  Eigen::VectorXd scores;

  friend bool operator==(const SimilarityRecord& a, const SimilarityRecord& b) {
    return a.detection == b.detection && a.scores.size() == b.scores.size() &&
           (a.scores.array() == b.scores.array()).all();
  }
};

enum class Severity { warning, fatal };

struct ValidationIssue {
  Severity severity = Severity::warning;
  std::string location;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::map<std::string, std::size_t> counts;

  void warn(std::string location, std::string message);
  void fatal(std::string location, std::string message);
  void merge(const ValidationReport& other);

  bool has_fatal() const;
  std::size_t num_warnings() const;
  std::size_t num_fatal() const;
};

/// Thrown when an input cannot be evaluated. Carries the report that
/// collected the fatal issue(s).
class InputError : public std::runtime_error {
 public:
  explicit InputError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Everything a single evaluation run consumes. `image_ids` is the probe image
/// universe I, declared by the ground truth. Exactly one of `detections` or
/// `records` is used, depending on the evaluation mode.
struct EvalDataset {
  std::vector<std::string> image_ids;
  std::vector<GroundTruthFace> faces;
  Gallery gallery;
  std::vector<Detection> detections;
  std::vector<SimilarityRecord> records;
  /// Optional (width, height) per image; used only by lint.
  std::map<std::string, std::pair<double, double>> image_bounds;
};

}  // namespace oseval
