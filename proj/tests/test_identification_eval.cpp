#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "oseval/identification_eval.hpp"
#include "oseval/pipeline.hpp"

using namespace oseval;

namespace {

SimilarityRecord row(std::initializer_list<double> values) {
  SimilarityRecord r;
  r.scores.resize(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const double v : values) r.scores[i++] = v;
  return r;
}

KnownProbe known(int label, std::optional<Rank1Decision> d) {
  KnownProbe k;
  k.face.subject_label = label;
  k.decision = d;
  return k;
}

const CurvePoint& at(const Curve& c, double threshold) {
  for (const auto& p : c.points) {
    if (p.threshold == threshold) return p;
  }
  FAIL("threshold not on curve");
  return c.points.front();
}

}  // namespace

TEST_CASE("rank-1 decision") {
  const Gallery g{{7, 12, 3}};
  CHECK(rank1_decision(row({0.1, 0.9, 0.3}), g) == Rank1Decision{12, 0.9, 1});
  CHECK(rank1_decision(row({0.5, 0.5}), Gallery{{7, 12}}) == Rank1Decision{7, 0.5, 0});
  CHECK(rank1_decision(row({-1.0, -1.0, -1.0}), g) == Rank1Decision{7, -1.0, 0});
  CHECK(rank1_decision(row({0.2, 0.9, 0.9}), g).subject_id == 12);
  CHECK_THROWS_AS(rank1_decision(row({0.1, 0.2}), g), std::invalid_argument);

  // Tie at a late position among many columns still resolves to the first.
  SimilarityRecord wide;
  wide.scores = Eigen::VectorXd::Constant(257, 0.25);
  wide.scores[100] = 0.75;
  wide.scores[200] = 0.75;
  Gallery big;
  for (int i = 1; i <= 257; ++i) big.subject_ids.push_back(i);
  CHECK(rank1_decision(wide, big).gallery_index == 100);
}

TEST_CASE("oroc examples") {
  IdentificationInput in;
  in.num_images = 2;
  in.gallery = {{7, 12}};
  in.known = {known(7, Rank1Decision{7, 0.8, 0}), known(12, Rank1Decision{7, 0.6, 0})};
  in.unknown_faces = {{0, 0.5}};
  const auto c = oroc(in);
  CHECK(at(c, 0.5).y == 0.5);
  CHECK(at(c, 0.5).x == 0.5);
  CHECK(at(c, 0.8).y == 0.5);
  CHECK(at(c, 0.8).x == 0.0);
  CHECK(c.points.front() == CurvePoint{kInfinity, 0, 0, 0, 0});
  CHECK(oroc_at(in, 0.5) == at(c, 0.5));

  IdentificationInput missing;
  missing.num_images = 1;
  missing.gallery = {{7}};
  missing.known = {known(7, std::nullopt), known(7, Rank1Decision{7, 0.9, 0})};
  for (const auto& p : oroc(missing).points) CHECK(p.y <= 0.5);

  IdentificationInput none;
  none.num_images = 1;
  CHECK_THROWS_AS(oroc(none), std::invalid_argument);
}

TEST_CASE("sum of TPIR without unknowns") {
  IdentificationInput in;
  in.num_images = 5;
  in.gallery = {{7}};
  in.known = {known(7, Rank1Decision{7, 0.9, 0}), known(7, Rank1Decision{7, 0.4, 0}),
              known(7, std::nullopt), known(7, Rank1Decision{7, 0.1, 0})};
  const auto c = oroc(in);
  CHECK(sum_tpir(c).sum == 4 * c.points.back().y);
}

TEST_CASE("closed set") {
  IdentificationInput perfect;
  perfect.num_images = 4;
  perfect.gallery = {{7}};
  perfect.known = {known(7, Rank1Decision{7, 0.9, 0}), known(7, Rank1Decision{7, 0.3, 0})};
  perfect.unknown_faces = {{0, 0.1}, {1, -0.5}};
  perfect.false_positive_detections = {{2, 0.2}};
  const auto s = closed_set(perfect);
  CHECK(s.tpdr_closed == 1.0);
  CHECK(s.tpir_closed == 1.0);
  CHECK(s.fpipi_at_max == 3.0 / 4.0);

  IdentificationInput blind = perfect;
  blind.known = {known(7, std::nullopt)};
  const auto b = closed_set(blind);
  CHECK(b.tpdr_closed == 0.0);
  CHECK(b.tpir_closed == 0.0);
  CHECK(b.fpipi_at_max == 3.0 / 4.0);
}

TEST_CASE("CURR over TPIPI") {
  IdentificationInput in;
  in.num_images = 3;
  in.gallery = {{7}};
  in.known = {known(7, Rank1Decision{7, 0.6, 0}), known(7, Rank1Decision{7, 0.2, 0})};
  in.unknown_faces = {{0, 0.3}, {1, 0.6}};
  const auto c = curr_tpipi(in, UnknownKind::unknown_faces);
  CHECK(at(c, 0.6).y == 0.5);
  CHECK(at(c, 0.6).x == 1.0 / 3.0);
  CHECK(c.points.front().y == 1.0);
  CHECK(c.points.front().x == 0.0);
  CHECK(c.points.back().threshold == 0.2);
  CHECK(c.points.back().y == 0.0);
  CHECK(c.points.back().x == 2.0 / 3.0);
  CHECK_THROWS_AS(curr_tpipi(in, UnknownKind::false_positive_detections), std::invalid_argument);
}

TEST_CASE("probe partition") {
  GroundTruth gt;
  gt.image_ids = {"a", "b"};
  gt.faces = {{"a", "1", 7, {0, 0, 10, 10}, false},     // known, detected
              {"a", "2", 12, {50, 0, 10, 10}, false},   // known, missed
              {"a", "3", -1, {100, 0, 10, 10}, false},  // unknown, detected
              {"b", "1", 99, {0, 0, 10, 10}, false},    // not enrolled, detected
              {"b", "2", 7, {50, 0, 10, 10}, true}};    // ignored
  const Gallery g{{7, 12}};
  std::vector<SimilarityRecord> recs;
  const auto add = [&](std::string image, BoundingBox b, double s7, double s12) {
    auto r = row({s7, s12});
    r.detection = {std::move(image), 0.9, b};
    recs.push_back(r);
  };
  add("a", {0, 0, 10, 10}, 0.8, 0.1);
  add("a", {100, 0, 10, 10}, 0.3, 0.2);
  add("b", {0, 0, 10, 10}, 0.1, 0.4);
  add("b", {200, 0, 10, 10}, 0.0, 0.05);
  add("b", {50, 0, 10, 10}, 0.9, 0.9);  // on the ignored face: dropped

  ValidationReport report;
  const auto in = evaluate_identification(gt, recs, g, 0.2, 1, &report);
  REQUIRE(in.known.size() == 2);
  CHECK(in.known[0].correct());
  CHECK_FALSE(in.known[1].decision);
  REQUIRE(in.unknown_faces.size() == 2);
  CHECK(in.unknown_faces[0].max_score == 0.3);
  CHECK(in.unknown_faces[1].max_score == 0.4);
  REQUIRE(in.false_positive_detections.size() == 1);
  CHECK(in.false_positive_detections[0].record_index == 3);
  CHECK(report.num_warnings() == 1);
}

TEST_CASE("oroc and CURR equal the rescan oracle on random data") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = testing::random_scenario(rng);
    std::vector<Detection> dets;
    for (const auto& r : s.records) dets.push_back(r.detection);
    const auto classified = classify_dataset(s.truth.image_ids, s.truth.faces, dets);
    const auto in = build_identification_input(s.truth.faces, classified, s.records, s.gallery,
                                               s.truth.image_ids.size());
    const auto want = testing::identification_oracle(s, classified);
    REQUIRE(in.known.size() == want.num_known);
    if (in.known.empty()) continue;
    CHECK(oroc(in) == want.oroc);
    if (!in.unknown_faces.empty()) CHECK(curr_tpipi(in, UnknownKind::unknown_faces) == want.curr_unknown);
    if (!in.false_positive_detections.empty()) {
      CHECK(curr_tpipi(in, UnknownKind::false_positive_detections) == want.curr_fpd);
    }
  }
}
