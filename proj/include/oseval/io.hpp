#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "oseval/types.hpp"

namespace oseval {

struct GroundTruth {
  /// Images in first-appearance order, deduplicated. Defines |I|.
  std::vector<std::string> image_ids;
  std::vector<GroundTruthFace> faces;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

// Each parser appends what it finds to `report` (including per-kind record
// counts) and throws InputError once the whole input has been scanned if any
// issue is fatal. `source` names the input in issue locations.

Gallery parse_gallery(std::istream& in, std::string_view source, ValidationReport& report);
Gallery parse_gallery(const std::filesystem::path& path, ValidationReport& report);

GroundTruth parse_ground_truth(std::istream& in, std::string_view source,
                               ValidationReport& report);
GroundTruth parse_ground_truth(const std::filesystem::path& path, ValidationReport& report);

std::vector<Detection> parse_detections(std::istream& in, std::string_view source,
                                        ValidationReport& report);
std::vector<Detection> parse_detections(const std::filesystem::path& path,
                                        ValidationReport& report);

/// Score columns must name the gallery subjects in gallery order.
std::vector<SimilarityRecord> parse_scores(std::istream& in, std::string_view source,
                                           const Gallery& gallery, ValidationReport& report);
std::vector<SimilarityRecord> parse_scores(const std::filesystem::path& path,
                                           const Gallery& gallery, ValidationReport& report);

// Writers emit exactly the formats the parsers accept, with shortest
// round-trip number formatting.

std::string serialize_gallery(const Gallery& gallery);
std::string serialize_ground_truth(const GroundTruth& truth);
std::string serialize_detections(const std::vector<Detection>& detections);
std::string serialize_scores(const std::vector<SimilarityRecord>& records, const Gallery& gallery);

/// Non-fatal consistency checks over an assembled dataset: boxes outside known
/// image bounds, detections on undeclared images, byte-identical duplicate
/// detections.
ValidationReport lint(const EvalDataset& dataset);

}  // namespace oseval
