#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "oseval/io.hpp"
#include "oseval/types.hpp"

namespace oseval {

/// Stochastic scenario model. Defaults mimic a surveillance watchlist of
/// 7584 images, about 2.33 faces per image, 53% known, 1000 enrolled
/// identities.
struct SynthConfig {
  std::size_t num_images = 7584;
  double faces_per_image = 2.332;  // Poisson mean
  std::size_t gallery_size = 1000;
  double known_fraction = 0.531;
  double p_detect = 0.9;
  double tp_alpha = 5.0;  // true-positive confidence ~ Beta(tp_alpha, tp_beta)
  double tp_beta = 2.0;
  double fp_per_image = 0.5;  // Poisson mean of background detections
  double fp_alpha = 2.0;      // false-positive confidence ~ Beta(fp_alpha, fp_beta)
  double fp_beta = 5.0;
  double match_mean = 0.7;  // similarity to the true identity, truncated to [-1, 1]
  double match_sigma = 0.1;
  double nonmatch_mean = 0.0;  // similarity to every other identity
  double nonmatch_sigma = 0.1;
  double image_width = 5184.0;
  double image_height = 3456.0;
  double face_min_size = 40.0;
  double face_max_size = 200.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

/// Reads `key = value` lines ('#' comments allowed) over the defaults.
/// Unknown keys and malformed values throw std::invalid_argument.
SynthConfig parse_synth_config(std::istream& in);
SynthConfig parse_synth_config(const std::filesystem::path& path);

/// Applies one `key`/`value` override; same rules as the file format.
void set_synth_field(SynthConfig& config, const std::string& key, const std::string& value);
std::vector<std::string> synth_field_names();
std::string serialize_synth_config(const SynthConfig& config);

struct SynthData {
  Gallery gallery;
  GroundTruth truth;
  /// Detections with their similarity rows; the detection file is the same
  /// rows without scores.
  std::vector<SimilarityRecord> records;

  std::vector<Detection> detections() const;
};

/// Draws a full scenario from a single pseudo-random stream consumed in
/// (image, entity) order; identical configs give identical data. Throws
/// std::runtime_error if boxes cannot be placed without overlap.
SynthData generate(const SynthConfig& config);

/// Writes gallery.csv, ground_truth.csv, detections.csv and scores.csv.
void write_synth_files(const SynthData& data, const std::filesystem::path& out_dir);

/// Closed-form expected metric values of the model, per threshold.
class SynthExpectations {
 public:
  explicit SynthExpectations(SynthConfig config);

  double tpdr(double threshold) const;
  double fpdpi(double threshold) const;
  double tpir(double threshold) const;
  double fpipi(double threshold) const;
  /// Same for both unknown types: every column of an unknown row is a
  /// non-match draw.
  double curr(double threshold) const;
  double tpipi(double threshold) const;

  /// Truncated-normal CDFs of the similarity model.
  double match_cdf(double x) const;
  double nonmatch_cdf(double x) const;

 private:
  SynthConfig config_;
};

struct ExpectedRow {
  double threshold = 0.0;
  double tpdr = 0.0;
  double fpdpi = 0.0;
  double tpir = 0.0;
  double fpipi = 0.0;
  double tpipi = 0.0;
  double curr = 0.0;
};

std::vector<ExpectedRow> expectations(const SynthConfig& config,
                                      const std::vector<double>& thresholds);
std::string serialize_expectations(const std::vector<ExpectedRow>& rows);

}  // namespace oseval
