#pragma once

// Brute-force reference computations used only by tests. Nothing here calls
// the sweep, rank-1 or partition code under test; every quantity is
// recomputed from raw inputs by direct rescans.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "oseval/curve.hpp"
#include "oseval/identification_eval.hpp"
#include "oseval/io.hpp"
#include "oseval/matching.hpp"
#include "oseval/synthgen.hpp"

namespace oseval::testing {

/// Per-threshold rescan FROC: for every candidate threshold, counts C+ and C-
/// by scanning all classified detections.
Curve froc_oracle(const std::vector<ClassifiedDetection>& classified, std::size_t num_images,
                  std::size_t num_faces);

/// Raw identification scenario for the O-ROC / CURR oracles.
struct IdentificationScenario {
  GroundTruth truth;
  Gallery gallery;
  std::vector<SimilarityRecord> records;
};

struct IdentificationOracle {
  Curve oroc;
  Curve curr_unknown;  // empty points when U_-1 is empty
  Curve curr_fpd;      // empty points when U_FPD is empty
  std::size_t num_known = 0;
  std::size_t num_unknown_faces = 0;
  std::size_t num_fpd = 0;
};

/// Partitions probes and rescans every threshold independently, with its own
/// argmax loop. `classified` comes from matching the records' detections.
IdentificationOracle identification_oracle(const IdentificationScenario& s,
                                           const std::vector<ClassifiedDetection>& classified);

/// Exhaustive enumeration of all one-to-one matchings with IoU >= threshold;
/// returns the pair set that is lexicographically best when detections are
/// visited in descending confidence (row order on ties) and each detection
/// prefers a higher IoU, then a lower face index. Valid for distinct
/// confidences; sizes up to 8x8.
std::vector<MatchedPair> matching_oracle(const std::vector<GroundTruthFace>& faces,
                                         const std::vector<Detection>& detections,
                                         double threshold);

struct InstanceLimits {
  std::size_t max_images = 8;
  std::size_t max_faces = 50;
  std::size_t max_detections = 200;
  std::size_t max_gallery = 20;
};

/// Random small scenario: faces with known, unknown, unenrolled and ignored
/// labels; detections near faces (true and duplicate hits) and in the
/// background; scores drawn on coarse grids half of the time so ties occur.
IdentificationScenario random_scenario(std::mt19937_64& rng, const InstanceLimits& limits = {});

/// Applies `f` to every confidence and every similarity score.
IdentificationScenario transform_scores(IdentificationScenario s, const std::function<double(double)>& f);

/// Per-draw simulation of the generator's score model, independent of the
/// closed forms: every probe is simulated column by column with rejection
/// sampling for the truncation.
struct MonteCarloRates {
  double tpdr = 0.0;   // p_detect * P(tp confidence >= t)
  double fpdpi = 0.0;  // fp_per_image * P(fp confidence >= t)
  double tpir = 0.0;   // detected, true column wins and reaches t
  double curr = 0.0;   // max of gallery_size non-match columns < t
};

/// One entry per threshold, all from the same draws.
std::vector<MonteCarloRates> monte_carlo(const SynthConfig& config, const std::vector<double>& thresholds,
                                         std::size_t draws, std::uint64_t seed);

}  // namespace oseval::testing
