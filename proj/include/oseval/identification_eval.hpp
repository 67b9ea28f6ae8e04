#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oseval/curve.hpp"
#include "oseval/matching.hpp"
#include "oseval/types.hpp"

namespace oseval {

/// Rank-1 outcome of comparing one probe against the whole gallery.
struct Rank1Decision {
  int subject_id = 0;
  double score = 0.0;
  std::size_t gallery_index = 0;

  friend bool operator==(const Rank1Decision&, const Rank1Decision&) = default;
};

/// Highest-scoring gallery subject; ties go to the earliest gallery position.
Rank1Decision rank1_decision(const SimilarityRecord& record, const Gallery& gallery);

/// A ground-truth face whose identity is enrolled. `decision` is absent when
/// no detection was matched to the face; such probes still count in |K|.
struct KnownProbe {
  GroundTruthFace face;
  std::optional<Rank1Decision> decision;
  std::optional<std::size_t> record_index;

  /// Rank-1 identity equals the face's label.
  bool correct() const { return decision && decision->subject_id == face.subject_label; }
};

/// A probe that should be rejected: only its maximal similarity matters.
struct UnknownProbe {
  std::size_t record_index = 0;
  double max_score = 0.0;
};

struct IdentificationInput {
  std::vector<KnownProbe> known;
  std::vector<UnknownProbe> unknown_faces;              // U_-1
  std::vector<UnknownProbe> false_positive_detections;  // U_FPD
  std::size_t num_images = 0;
  Gallery gallery;

  std::size_t num_unknown() const {
    return unknown_faces.size() + false_positive_detections.size();
  }
};

/// Partitions probes into K, U_-1 and U_FPD. `classified` must come from
/// `classify_dataset` run over the detections of `records`, so that
/// `index` refers to `records` and `matched_face` to `faces`. Faces labeled
/// with identities absent from the gallery are treated as unknown; a warning
/// per such identity is appended to `report` when given.
IdentificationInput build_identification_input(const std::vector<GroundTruthFace>& faces,
                                               std::span<const ClassifiedDetection> classified,
                                               const std::vector<SimilarityRecord>& records,
                                               const Gallery& gallery, std::size_t num_images,
                                               ValidationReport* report = nullptr);

/// Open-set ROC at rank 1: TPIR over FPIPI. Throws std::invalid_argument when
/// K is empty or there are no images.
Curve oroc(const IdentificationInput& input);

RankingRow sum_tpir(const Curve& oroc_curve, const std::vector<double>& targets = kDefaultTargets,
                    std::string method = {});

/// O-ROC operating point for an arbitrary threshold.
CurvePoint oroc_at(const IdentificationInput& input, double threshold);

struct ClosedSetSummary {
  double tpdr_closed = 0.0;   // known probes with a matched detection / |K|
  double tpir_closed = 0.0;   // TPIR at the most permissive threshold
  double fpipi_at_max = 0.0;  // FPIPI at that same threshold
};

ClosedSetSummary closed_set(const IdentificationInput& input);

enum class UnknownKind { unknown_faces, false_positive_detections };

/// Correct unknown rejection rate of one unknown type (strictly below the
/// threshold) over TPIPI, on the O-ROC threshold grid. x is TPIPI, y is CURR.
/// Throws std::invalid_argument when the selected set is empty.
Curve curr_tpipi(const IdentificationInput& input, UnknownKind which);

}  // namespace oseval
