#include "oseval/detection_eval.hpp"

#include <stdexcept>

namespace oseval {

namespace {

void require_denominators(std::size_t num_images, std::size_t num_faces) {
  if (num_faces == 0) throw std::invalid_argument("FROC undefined: no ground-truth faces");
  if (num_images == 0) throw std::invalid_argument("FROC undefined: no probe images");
}

}  // namespace

Curve froc(std::span<const ClassifiedDetection> classified, std::size_t num_images,
           std::size_t num_faces) {
  require_denominators(num_images, num_faces);
  std::vector<double> positives;
  std::vector<double> negatives;
  for (const auto& c : classified) (c.positive() ? positives : negatives).push_back(c.confidence);
  return sweep(std::move(positives), std::move(negatives), num_faces, num_images, "FPDPI",
               "TPDR");
}

std::optional<double> fpdpi_inverse(const Curve& froc_curve, double target) {
  const auto idx = operating_point(froc_curve, target);
  if (!idx) return std::nullopt;
  return froc_curve.points[*idx].threshold;
}

RankingRow sum_tpdr(const Curve& froc_curve, const std::vector<double>& targets,
                    std::string method) {
  return sum_at_targets(froc_curve, targets, std::move(method));
}

CurvePoint froc_at(std::span<const ClassifiedDetection> classified, std::size_t num_images,
                   std::size_t num_faces, double threshold) {
  require_denominators(num_images, num_faces);
  CurvePoint p;
  p.threshold = threshold;
  for (const auto& c : classified) {
    if (c.confidence < threshold) continue;
    ++(c.positive() ? p.y_count : p.x_count);
  }
  p.x = static_cast<double>(p.x_count) / static_cast<double>(num_images);
  p.y = static_cast<double>(p.y_count) / static_cast<double>(num_faces);
  return p;
}

}  // namespace oseval
