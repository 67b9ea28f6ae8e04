#include "oseval/matching.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "oseval/parallel.hpp"

namespace oseval {

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

namespace {

struct Claim {
  std::size_t face = 0;
  double iou = -1.0;
};

std::optional<Claim> best_free_face(const BoundingBox& box, std::span<const GroundTruthFace> faces,
                                    const std::vector<bool>& taken, double threshold) {
  std::optional<Claim> best;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (taken[f]) continue;
    const double v = iou(box, faces[f].box);
    if (v < threshold) continue;
    if (!best || v > best->iou) best = Claim{f, v};
  }
  return best;
}

}  // namespace

Assignment assign(std::span<const GroundTruthFace> faces, std::span<const Detection> detections,
                  double iou_threshold) {
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].confidence > detections[b].confidence;
  });

  Assignment out;
  std::vector<bool> face_taken(faces.size(), false);
  std::vector<bool> det_done(detections.size(), false);

  // Walk groups of equal confidence. Inside a group the detection with the
  // highest available IoU claims first; stable order breaks remaining ties.
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin + 1;
    while (end < order.size() &&
           detections[order[end]].confidence == detections[order[begin]].confidence) {
      ++end;
    }
    while (true) {
      std::optional<std::pair<std::size_t, Claim>> pick;
      for (std::size_t k = begin; k < end; ++k) {
        const auto d = order[k];
        if (det_done[d]) continue;
        const auto claim = best_free_face(detections[d].box, faces, face_taken, iou_threshold);
        if (claim && (!pick || claim->iou > pick->second.iou)) pick.emplace(d, *claim);
      }
      if (!pick) break;
      const auto [d, claim] = *pick;
      det_done[d] = true;
      face_taken[claim.face] = true;
      out.pairs.push_back({d, claim.face, claim.iou});
    }
    for (std::size_t k = begin; k < end; ++k) {
      if (!det_done[order[k]]) {
        det_done[order[k]] = true;
        out.unmatched_detections.push_back(order[k]);
      }
    }
    begin = end;
  }
  std::sort(out.unmatched_detections.begin(), out.unmatched_detections.end());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (!face_taken[f]) out.unmatched_faces.push_back(f);
  }
  return out;
}

std::vector<ClassifiedDetection> classify(const Assignment& assignment,
                                          std::span<const GroundTruthFace> faces,
                                          std::span<const Detection> detections,
                                          std::span<const GroundTruthFace> ignored_faces,
                                          double iou_threshold) {
  std::vector<std::optional<MatchedPair>> by_detection(detections.size());
  for (const auto& p : assignment.pairs) by_detection[p.detection] = p;

  std::vector<ClassifiedDetection> out;
  out.reserve(detections.size());
  for (std::size_t d = 0; d < detections.size(); ++d) {
    ClassifiedDetection c;
    c.index = d;
    c.confidence = detections[d].confidence;
    if (const auto& pair = by_detection[d]) {
      c.cls = DetectionClass::positive;
      c.matched_label = faces[pair->face].subject_label;
      c.matched_face = pair->face;
    } else {
      const bool on_ignored = std::any_of(
          ignored_faces.begin(), ignored_faces.end(),
          [&](const auto& f) { return iou(detections[d].box, f.box) >= iou_threshold; });
      if (on_ignored) continue;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<ClassifiedDetection> classify_dataset(const std::vector<std::string>& image_ids,
                                                  const std::vector<GroundTruthFace>& faces,
                                                  const std::vector<Detection>& detections,
                                                  double iou_threshold, unsigned workers) {
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < image_ids.size(); ++i) slot.emplace(image_ids[i], i);

  std::vector<std::vector<std::size_t>> face_idx(image_ids.size());
  std::vector<std::vector<std::size_t>> ignored_idx(image_ids.size());
  std::vector<std::vector<std::size_t>> det_idx(image_ids.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto it = slot.find(faces[f].image_id);
    if (it == slot.end()) continue;
    (faces[f].ignore ? ignored_idx : face_idx)[it->second].push_back(f);
  }
  for (std::size_t d = 0; d < detections.size(); ++d) {
    if (const auto it = slot.find(detections[d].image_id); it != slot.end()) {
      det_idx[it->second].push_back(d);
    }
  }

  std::vector<std::vector<ClassifiedDetection>> per_image(image_ids.size());
  parallel_for(image_ids.size(), workers, [&](std::size_t i) {
    if (det_idx[i].empty()) return;
    const auto gather = [](const auto& source, const std::vector<std::size_t>& idx) {
      std::vector<typename std::decay_t<decltype(source)>::value_type> out;
      out.reserve(idx.size());
      for (auto k : idx) out.push_back(source[k]);
      return out;
    };
    const auto img_faces = gather(faces, face_idx[i]);
    const auto img_ignored = gather(faces, ignored_idx[i]);
    const auto img_dets = gather(detections, det_idx[i]);
    const auto a = assign(img_faces, img_dets, iou_threshold);
    auto local = classify(a, img_faces, img_dets, img_ignored, iou_threshold);
    for (auto& c : local) {
      c.index = det_idx[i][c.index];
      if (c.matched_face) c.matched_face = face_idx[i][*c.matched_face];
    }
    per_image[i] = std::move(local);
  });

  std::vector<ClassifiedDetection> out;
  for (auto& v : per_image) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace oseval
