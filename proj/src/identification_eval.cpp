#include "oseval/identification_eval.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace oseval {

Rank1Decision rank1_decision(const SimilarityRecord& record, const Gallery& gallery) {
  if (record.scores.size() == 0 ||
      static_cast<std::size_t>(record.scores.size()) != gallery.size()) {
    throw std::invalid_argument("similarity row length does not match the gallery");
  }
  // Eigen's visitor keeps the first maximal coefficient.
  Eigen::Index best = 0;
  const double score = record.scores.maxCoeff(&best);
  const auto idx = static_cast<std::size_t>(best);
  return {gallery.subject_ids[idx], score, idx};
}

IdentificationInput build_identification_input(const std::vector<GroundTruthFace>& faces,
                                               std::span<const ClassifiedDetection> classified,
                                               const std::vector<SimilarityRecord>& records,
                                               const Gallery& gallery, std::size_t num_images,
                                               ValidationReport* report) {
  IdentificationInput input;
  input.num_images = num_images;
  input.gallery = gallery;

  std::vector<std::optional<std::size_t>> record_of_face(faces.size());
  for (const auto& c : classified) {
    if (c.positive() && c.matched_face) record_of_face[*c.matched_face] = c.index;
  }

  std::map<int, std::size_t> unenrolled;  // subject id -> faces
  std::vector<bool> face_is_known(faces.size(), false);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    if (face.ignore || face.is_unknown()) continue;
    if (!gallery.position_of(face.subject_label)) {
      ++unenrolled[face.subject_label];
      continue;
    }
    face_is_known[f] = true;
    KnownProbe probe{face, std::nullopt, record_of_face[f]};
    if (record_of_face[f]) probe.decision = rank1_decision(records[*record_of_face[f]], gallery);
    input.known.push_back(std::move(probe));
  }

  for (const auto& c : classified) {
    if (c.positive() && c.matched_face && face_is_known[*c.matched_face]) continue;
    const UnknownProbe u{c.index, rank1_decision(records[c.index], gallery).score};
    (c.positive() ? input.unknown_faces : input.false_positive_detections).push_back(u);
  }

  if (report) {
    for (const auto& [id, n] : unenrolled) {
      report->warn("ground truth", "subject " + std::to_string(id) + " (" + std::to_string(n) +
                                       " faces) is not in the gallery; treated as unknown");
    }
    report->counts["known_probes"] = input.known.size();
    report->counts["unknown_faces"] = input.unknown_faces.size();
    report->counts["false_positive_detections"] = input.false_positive_detections.size();
  }
  return input;
}

namespace {

void require_known(const IdentificationInput& input) {
  if (input.known.empty()) throw std::invalid_argument("O-ROC undefined: no known probes");
  if (input.num_images == 0) throw std::invalid_argument("O-ROC undefined: no probe images");
}

std::vector<double> correct_scores(const IdentificationInput& input) {
  std::vector<double> out;
  for (const auto& k : input.known) {
    if (k.correct()) out.push_back(k.decision->score);
  }
  return out;
}

std::vector<double> max_scores(const std::vector<UnknownProbe>& probes) {
  std::vector<double> out;
  out.reserve(probes.size());
  for (const auto& u : probes) out.push_back(u.max_score);
  return out;
}

}  // namespace

Curve oroc(const IdentificationInput& input) {
  require_known(input);
  auto unknown = max_scores(input.unknown_faces);
  const auto fpd = max_scores(input.false_positive_detections);
  unknown.insert(unknown.end(), fpd.begin(), fpd.end());
  return sweep(correct_scores(input), std::move(unknown), input.known.size(), input.num_images,
               "FPIPI", "TPIR");
}

RankingRow sum_tpir(const Curve& oroc_curve, const std::vector<double>& targets,
                    std::string method) {
  return sum_at_targets(oroc_curve, targets, std::move(method));
}

CurvePoint oroc_at(const IdentificationInput& input, double threshold) {
  require_known(input);
  CurvePoint p;
  p.threshold = threshold;
  for (const auto& k : input.known) {
    if (k.correct() && k.decision->score >= threshold) ++p.y_count;
  }
  for (const auto* set : {&input.unknown_faces, &input.false_positive_detections}) {
    for (const auto& u : *set) {
      if (u.max_score >= threshold) ++p.x_count;
    }
  }
  p.x = static_cast<double>(p.x_count) / static_cast<double>(input.num_images);
  p.y = static_cast<double>(p.y_count) / static_cast<double>(input.known.size());
  return p;
}

ClosedSetSummary closed_set(const IdentificationInput& input) {
  const auto curve = oroc(input);
  const auto& last = curve.points.back();
  const auto detected = std::count_if(input.known.begin(), input.known.end(),
                                      [](const KnownProbe& k) { return k.decision.has_value(); });
  return {static_cast<double>(detected) / static_cast<double>(input.known.size()), last.y, last.x};
}

Curve curr_tpipi(const IdentificationInput& input, UnknownKind which) {
  const auto& selected = which == UnknownKind::unknown_faces ? input.unknown_faces
                                                             : input.false_positive_detections;
  if (selected.empty()) {
    throw std::invalid_argument(which == UnknownKind::unknown_faces
                                    ? "CURR undefined: no unknown faces (U_-1 is empty)"
                                    : "CURR undefined: no false positive detections (U_FPD is empty)");
  }
  const auto grid = oroc(input);
  auto scores = max_scores(selected);
  std::sort(scores.begin(), scores.end());

  Curve curve;
  curve.x_label = "TPIPI";
  curve.y_label = "CURR";
  curve.x_denominator = input.num_images;
  curve.y_denominator = selected.size();
  curve.points.reserve(grid.points.size());
  for (const auto& g : grid.points) {
    const auto rejected = static_cast<std::size_t>(
        std::lower_bound(scores.begin(), scores.end(), g.threshold) - scores.begin());
    curve.points.push_back({g.threshold,
                            static_cast<double>(g.y_count) / static_cast<double>(input.num_images),
                            static_cast<double>(rejected) / static_cast<double>(selected.size()),
                            g.y_count, rejected});
  }
  return curve;
}

}  // namespace oseval
