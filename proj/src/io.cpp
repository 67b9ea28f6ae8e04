#include "oseval/io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "oseval/csv.hpp"

namespace oseval {

namespace {

using FieldList = std::vector<std::string_view>;

const std::vector<std::string_view> kGalleryHeader = {"SUBJECT_ID"};
const std::vector<std::string_view> kTruthHeader = {"IMAGE", "FACE_ID", "SUBJECT_ID", "X",
                                                    "Y",     "WIDTH",   "HEIGHT"};
const std::vector<std::string_view> kDetectionHeader = {"IMAGE", "SCORE", "X",
                                                        "Y",     "WIDTH", "HEIGHT"};

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::string in_quotes(std::string_view s) { return "'" + std::string(s) + "'"; }

std::ifstream open_or_throw(const std::filesystem::path& path, ValidationReport& report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    report.fatal(path.string(), "cannot open file");
    throw InputError(report);
  }
  return in;
}

bool header_matches(const FieldList& fields, const std::vector<std::string_view>& expected,
                    std::size_t offset = 0) {
  if (fields.size() < offset + expected.size()) return false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (fields[offset + i] != expected[i]) return false;
  }
  return true;
}

std::string join(const std::vector<std::string_view>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ',';
    out += n;
  }
  return out;
}

void throw_if_fatal(const ValidationReport& report) {
  if (report.has_fatal()) throw InputError(report);
}

/// Reads X,Y,WIDTH,HEIGHT starting at `first`. Reports and returns nullopt on
/// any problem.
std::optional<BoundingBox> read_box(const FieldList& fields, std::size_t first,
                                    const std::string& loc, ValidationReport& report) {
  static constexpr std::string_view names[] = {"X", "Y", "WIDTH", "HEIGHT"};
  double v[4];
  for (std::size_t i = 0; i < 4; ++i) {
    const auto parsed = csv::parse_real(fields[first + i]);
    if (!parsed) {
      report.fatal(loc, "unparsable " + std::string(names[i]) + " value " +
                            in_quotes(fields[first + i]));
      return std::nullopt;
    }
    v[i] = *parsed;
  }
  BoundingBox box{v[0], v[1], v[2], v[3]};
  if (!(box.width > 0.0)) {
    report.fatal(loc, "WIDTH must be positive, got " + in_quotes(fields[first + 2]));
    return std::nullopt;
  }
  if (!(box.height > 0.0)) {
    report.fatal(loc, "HEIGHT must be positive, got " + in_quotes(fields[first + 3]));
    return std::nullopt;
  }
  return box;
}

/// IMAGE,SCORE,X,Y,WIDTH,HEIGHT prefix shared by detection and score files.
std::optional<Detection> read_detection(const FieldList& fields, const std::string& loc,
                                        ValidationReport& report) {
  if (fields[0].empty()) {
    report.fatal(loc, "empty IMAGE");
    return std::nullopt;
  }
  const auto confidence = csv::parse_real(fields[1]);
  if (!confidence) {
    report.fatal(loc, "unparsable SCORE value " + in_quotes(fields[1]));
    return std::nullopt;
  }
  const auto box = read_box(fields, 2, loc, report);
  if (!box) return std::nullopt;
  return Detection{std::string(fields[0]), *confidence, *box};
}

void append_box(std::string& out, const BoundingBox& box) {
  out += csv::format_real(box.x);
  out += ',';
  out += csv::format_real(box.y);
  out += ',';
  out += csv::format_real(box.width);
  out += ',';
  out += csv::format_real(box.height);
}

void append_detection(std::string& out, const Detection& d) {
  out += d.image_id;
  out += ',';
  out += csv::format_real(d.confidence);
  out += ',';
  append_box(out, d.box);
}

}  // namespace

Gallery parse_gallery(std::istream& in, std::string_view source, ValidationReport& report) {
  csv::LineReader reader(in);
  FieldList fields;
  if (!reader.next()) {
    report.fatal(std::string(source), "empty gallery manifest (missing SUBJECT_ID header)");
    throw InputError(report);
  }
  csv::split(reader.line(), fields);
  if (fields.size() != 1 || !header_matches(fields, kGalleryHeader)) {
    report.fatal(where(source, reader.line_number()), "expected header SUBJECT_ID");
    throw InputError(report);
  }

  Gallery gallery;
  std::unordered_set<int> seen;
  while (reader.next()) {
    const auto loc = where(source, reader.line_number());
    csv::split(reader.line(), fields);
    if (fields.size() != 1) {
      report.fatal(loc, "expected exactly one column");
      continue;
    }
    const auto id = csv::parse_integer(fields[0]);
    if (!id || *id > std::numeric_limits<int>::max() || *id < std::numeric_limits<int>::min()) {
      report.fatal(loc, "unparsable subject id " + in_quotes(fields[0]));
      continue;
    }
    if (*id <= 0) {
      report.fatal(loc, "subject id must be positive, got " + std::to_string(*id));
      continue;
    }
    if (!seen.insert(static_cast<int>(*id)).second) {
      report.fatal(loc, "duplicate subject id " + std::to_string(*id));
      continue;
    }
    gallery.subject_ids.push_back(static_cast<int>(*id));
  }
  if (gallery.subject_ids.empty() && !report.has_fatal()) {
    report.fatal(std::string(source), "gallery manifest lists no subjects");
  }
  report.counts["gallery_subjects"] += gallery.size();
  throw_if_fatal(report);
  return gallery;
}

Gallery parse_gallery(const std::filesystem::path& path, ValidationReport& report) {
  auto in = open_or_throw(path, report);
  return parse_gallery(in, path.string(), report);
}

GroundTruth parse_ground_truth(std::istream& in, std::string_view source,
                               ValidationReport& report) {
  csv::LineReader reader(in);
  FieldList fields;
  if (!reader.next()) {
    report.fatal(std::string(source), "empty ground-truth file (missing header)");
    throw InputError(report);
  }
  csv::split(reader.line(), fields);
  const bool has_ignore = fields.size() == kTruthHeader.size() + 1 && fields.back() == "IGNORE";
  if (!header_matches(fields, kTruthHeader) ||
      (fields.size() != kTruthHeader.size() && !has_ignore)) {
    report.fatal(where(source, reader.line_number()),
                 "expected header " + join(kTruthHeader) + ",IGNORE");
    throw InputError(report);
  }
  const std::size_t columns = fields.size();

  GroundTruth truth;
  std::unordered_set<std::string> images;
  std::set<std::pair<std::string, std::string>> face_keys;
  std::size_t declared_only = 0;

  while (reader.next()) {
    const auto loc = where(source, reader.line_number());
    csv::split(reader.line(), fields);
    if (fields.size() != columns) {
      report.fatal(loc, "expected " + std::to_string(columns) + " columns, got " +
                            std::to_string(fields.size()));
      continue;
    }
    if (fields[0].empty()) {
      report.fatal(loc, "empty IMAGE");
      continue;
    }
    const std::string image(fields[0]);

    const bool bare = fields[1].empty() && fields[3].empty() && fields[4].empty() &&
                      fields[5].empty() && fields[6].empty();
    if (bare) {
      if (!fields[2].empty() || (has_ignore && !fields[7].empty() && fields[7] != "0")) {
        report.fatal(loc, "image declaration row must leave SUBJECT_ID and IGNORE empty");
        continue;
      }
      if (images.insert(image).second) truth.image_ids.push_back(image);
      ++declared_only;
      continue;
    }
    if (fields[1].empty()) {
      report.fatal(loc, "empty FACE_ID on a row with coordinates");
      continue;
    }

    const auto label = csv::parse_integer(fields[2]);
    if (!label || (*label != kUnknownLabel && *label <= 0) ||
        *label > std::numeric_limits<int>::max()) {
      report.fatal(loc, "SUBJECT_ID must be -1 or a positive integer, got " + in_quotes(fields[2]));
      continue;
    }
    const auto box = read_box(fields, 3, loc, report);
    if (!box) continue;

    bool ignore = false;
    if (has_ignore && !fields[7].empty()) {
      if (fields[7] == "1") {
        ignore = true;
      } else if (fields[7] != "0") {
        report.fatal(loc, "IGNORE must be 0 or 1, got " + in_quotes(fields[7]));
        continue;
      }
    }

    if (!face_keys.emplace(image, std::string(fields[1])).second) {
      report.fatal(loc, "duplicate face " + in_quotes(fields[1]) + " in image " + in_quotes(image));
      continue;
    }
    if (images.insert(image).second) truth.image_ids.push_back(image);
    truth.faces.push_back(
        GroundTruthFace{image, std::string(fields[1]), static_cast<int>(*label), *box, ignore});
  }

  report.counts["images"] += truth.image_ids.size();
  report.counts["faces"] += truth.faces.size();
  report.counts["image_declarations"] += declared_only;
  throw_if_fatal(report);
  return truth;
}

GroundTruth parse_ground_truth(const std::filesystem::path& path, ValidationReport& report) {
  auto in = open_or_throw(path, report);
  return parse_ground_truth(in, path.string(), report);
}

std::vector<Detection> parse_detections(std::istream& in, std::string_view source,
                                        ValidationReport& report) {
  csv::LineReader reader(in);
  FieldList fields;
  if (!reader.next()) {
    report.fatal(std::string(source), "empty detection file (missing header)");
    throw InputError(report);
  }
  csv::split(reader.line(), fields);
  if (fields.size() != kDetectionHeader.size() || !header_matches(fields, kDetectionHeader)) {
    report.fatal(where(source, reader.line_number()),
                 "expected header " + join(kDetectionHeader));
    throw InputError(report);
  }

  std::vector<Detection> detections;
  while (reader.next()) {
    const auto loc = where(source, reader.line_number());
    csv::split(reader.line(), fields);
    if (fields.size() != kDetectionHeader.size()) {
      report.fatal(loc, "expected 6 columns, got " + std::to_string(fields.size()));
      continue;
    }
    if (auto d = read_detection(fields, loc, report)) detections.push_back(std::move(*d));
  }
  report.counts["detections"] += detections.size();
  throw_if_fatal(report);
  return detections;
}

std::vector<Detection> parse_detections(const std::filesystem::path& path,
                                        ValidationReport& report) {
  auto in = open_or_throw(path, report);
  return parse_detections(in, path.string(), report);
}

std::vector<SimilarityRecord> parse_scores(std::istream& in, std::string_view source,
                                           const Gallery& gallery, ValidationReport& report) {
  csv::LineReader reader(in);
  FieldList fields;
  if (!reader.next()) {
    report.fatal(std::string(source), "empty score file (missing header)");
    throw InputError(report);
  }
  const auto header_loc = where(source, reader.line_number());
  csv::split(reader.line(), fields);
  if (!header_matches(fields, kDetectionHeader)) {
    report.fatal(header_loc, "expected header to start with " + join(kDetectionHeader));
    throw InputError(report);
  }
  const std::size_t num_scores = fields.size() - kDetectionHeader.size();
  if (num_scores != gallery.size()) {
    report.fatal(header_loc, "score file has " + std::to_string(num_scores) +
                                 " score columns but the gallery has " +
                                 std::to_string(gallery.size()) + " subjects");
    throw InputError(report);
  }
  for (std::size_t i = 0; i < num_scores; ++i) {
    const auto name = fields[kDetectionHeader.size() + i];
    const auto expected = "S_" + std::to_string(gallery.subject_ids[i]);
    if (name != expected) {
      report.fatal(header_loc, "score column " + std::to_string(i + 1) + " is " + in_quotes(name) +
                                   " but gallery order requires " + in_quotes(expected));
      throw InputError(report);
    }
  }

  const std::size_t columns = kDetectionHeader.size() + num_scores;
  std::vector<SimilarityRecord> records;
  while (reader.next()) {
    const auto loc = where(source, reader.line_number());
    csv::split(reader.line(), fields);
    if (fields.size() != columns) {
      report.fatal(loc, "expected " + std::to_string(columns) + " columns (" +
                            std::to_string(num_scores) + " scores), got " +
                            std::to_string(fields.size()));
      continue;
    }
    auto detection = read_detection(fields, loc, report);
    if (!detection) continue;
    SimilarityRecord record{std::move(*detection), Eigen::VectorXd(num_scores)};
    bool ok = true;
    for (std::size_t i = 0; i < num_scores; ++i) {
      const auto value = csv::parse_real(fields[kDetectionHeader.size() + i]);
      if (!value) {
        report.fatal(loc, "non-finite or unparsable score for S_" +
                              std::to_string(gallery.subject_ids[i]) + ": " +
                              in_quotes(fields[kDetectionHeader.size() + i]));
        ok = false;
        break;
      }
      record.scores[static_cast<Eigen::Index>(i)] = *value;
    }
    if (ok) records.push_back(std::move(record));
  }
  report.counts["score_records"] += records.size();
  throw_if_fatal(report);
  return records;
}

std::vector<SimilarityRecord> parse_scores(const std::filesystem::path& path,
                                           const Gallery& gallery, ValidationReport& report) {
  auto in = open_or_throw(path, report);
  return parse_scores(in, path.string(), gallery, report);
}

std::string serialize_gallery(const Gallery& gallery) {
  std::string out = "SUBJECT_ID\n";
  for (int id : gallery.subject_ids) {
    out += std::to_string(id);
    out += '\n';
  }
  return out;
}

std::string serialize_ground_truth(const GroundTruth& truth) {
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < truth.image_ids.size(); ++i) position[truth.image_ids[i]] = i;
  std::vector<bool> has_faces(truth.image_ids.size(), false);
  for (const auto& f : truth.faces) {
    if (const auto it = position.find(f.image_id); it != position.end()) has_faces[it->second] = true;
  }

  std::string out = "IMAGE,FACE_ID,SUBJECT_ID,X,Y,WIDTH,HEIGHT,IGNORE\n";
  std::size_t next_image = 0;
  // Emits declaration rows for face-free images up to (excluding) `stop` so
  // that re-parsing reproduces the first-appearance order of image_ids.
  const auto declare_until = [&](std::size_t stop) {
    for (; next_image < stop; ++next_image) {
      if (!has_faces[next_image]) {
        out += truth.image_ids[next_image];
        out += ",,,,,,,\n";
      }
    }
  };
  for (const auto& f : truth.faces) {
    const auto it = position.find(f.image_id);
    if (it != position.end() && it->second >= next_image) declare_until(it->second + 1);
    out += f.image_id;
    out += ',';
    out += f.face_id;
    out += ',';
    out += std::to_string(f.subject_label);
    out += ',';
    append_box(out, f.box);
    out += f.ignore ? ",1\n" : ",0\n";
  }
  declare_until(truth.image_ids.size());
  return out;
}

std::string serialize_detections(const std::vector<Detection>& detections) {
  std::string out = "IMAGE,SCORE,X,Y,WIDTH,HEIGHT\n";
  for (const auto& d : detections) {
    append_detection(out, d);
    out += '\n';
  }
  return out;
}

std::string serialize_scores(const std::vector<SimilarityRecord>& records, const Gallery& gallery) {
  std::string out = "IMAGE,SCORE,X,Y,WIDTH,HEIGHT";
  for (int id : gallery.subject_ids) {
    out += ",S_";
    out += std::to_string(id);
  }
  out += '\n';
  for (const auto& r : records) {
    append_detection(out, r.detection);
    for (Eigen::Index i = 0; i < r.scores.size(); ++i) {
      out += ',';
      out += csv::format_real(r.scores[i]);
    }
    out += '\n';
  }
  return out;
}

ValidationReport lint(const EvalDataset& dataset) {
  ValidationReport report;
  const std::unordered_set<std::string> declared(dataset.image_ids.begin(),
                                                 dataset.image_ids.end());

  const auto check_bounds = [&](const std::string& image, const BoundingBox& box,
                                const std::string& what) {
    const auto it = dataset.image_bounds.find(image);
    if (it == dataset.image_bounds.end()) return;
    const auto [w, h] = it->second;
    if (box.x < 0.0 || box.y < 0.0 || box.right() > w || box.bottom() > h) {
      report.warn(what, "box extends beyond image bounds of " + in_quotes(image));
    }
  };

  for (std::size_t i = 0; i < dataset.faces.size(); ++i) {
    const auto& f = dataset.faces[i];
    check_bounds(f.image_id, f.box, "face " + f.image_id + "/" + f.face_id);
  }

  const auto check_detection = [&](const Detection& d, const std::string& what) {
    if (!declared.count(d.image_id)) {
      report.warn(what, "detection on image " + in_quotes(d.image_id) +
                            " not declared in the ground truth; excluded from evaluation");
    }
    check_bounds(d.image_id, d.box, what);
  };

  std::unordered_set<std::string> seen_rows;
  const auto check_duplicate = [&](std::string row, const std::string& what) {
    if (!seen_rows.insert(std::move(row)).second) {
      report.warn(what, "duplicate of an earlier identical row");
    }
  };

  for (std::size_t i = 0; i < dataset.detections.size(); ++i) {
    const auto what = "detection #" + std::to_string(i + 1);
    check_detection(dataset.detections[i], what);
    std::string row;
    append_detection(row, dataset.detections[i]);
    check_duplicate(std::move(row), what);
  }
  seen_rows.clear();
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const auto what = "score record #" + std::to_string(i + 1);
    const auto& r = dataset.records[i];
    check_detection(r.detection, what);
    if (static_cast<std::size_t>(r.scores.size()) != dataset.gallery.size()) {
      report.warn(what, "score count does not match gallery size");
    }
    std::string row;
    append_detection(row, r.detection);
    for (Eigen::Index k = 0; k < r.scores.size(); ++k) {
      row += ',';
      row += csv::format_real(r.scores[k]);
    }
    check_duplicate(std::move(row), what);
  }

  report.counts["images"] = dataset.image_ids.size();
  report.counts["faces"] = dataset.faces.size();
  report.counts["detections"] = dataset.detections.size();
  report.counts["score_records"] = dataset.records.size();
  return report;
}

}  // namespace oseval
