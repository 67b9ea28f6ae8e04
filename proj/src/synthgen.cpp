#include "oseval/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/beta_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "oseval/csv.hpp"
#include "oseval/matching.hpp"

namespace oseval {

namespace {

constexpr double kScoreLow = -1.0;
constexpr double kScoreHigh = 1.0;
constexpr int kPlacementRetries = 200;

struct Field {
  std::function<std::string(const SynthConfig&)> get;
  std::function<void(SynthConfig&, const std::string&)> set;
};

double to_real(const std::string& key, const std::string& value) {
  const auto v = csv::parse_real(value);
  if (!v) throw std::invalid_argument("synth config: " + key + " expects a real, got '" + value + "'");
  return *v;
}

long long to_integer(const std::string& key, const std::string& value) {
  const auto v = csv::parse_integer(value);
  if (!v || *v < 0) {
    throw std::invalid_argument("synth config: " + key + " expects a non-negative integer, got '" +
                                value + "'");
  }
  return *v;
}

template <typename T>
Field count_field(T SynthConfig::*member) {
  return {[member](const SynthConfig& c) { return std::to_string(c.*member); },
          [member](SynthConfig& c, const std::string& v) {
            c.*member = static_cast<T>(to_integer("", v));
          }};
}

Field real_field(double SynthConfig::*member) {
  return {[member](const SynthConfig& c) { return csv::format_real(c.*member); },
          [member](SynthConfig& c, const std::string& v) { c.*member = to_real("", v); }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      {"num_images", count_field(&SynthConfig::num_images)},
      {"faces_per_image", real_field(&SynthConfig::faces_per_image)},
      {"gallery_size", count_field(&SynthConfig::gallery_size)},
      {"known_fraction", real_field(&SynthConfig::known_fraction)},
      {"p_detect", real_field(&SynthConfig::p_detect)},
      {"tp_alpha", real_field(&SynthConfig::tp_alpha)},
      {"tp_beta", real_field(&SynthConfig::tp_beta)},
      {"fp_per_image", real_field(&SynthConfig::fp_per_image)},
      {"fp_alpha", real_field(&SynthConfig::fp_alpha)},
      {"fp_beta", real_field(&SynthConfig::fp_beta)},
      {"match_mean", real_field(&SynthConfig::match_mean)},
      {"match_sigma", real_field(&SynthConfig::match_sigma)},
      {"nonmatch_mean", real_field(&SynthConfig::nonmatch_mean)},
      {"nonmatch_sigma", real_field(&SynthConfig::nonmatch_sigma)},
      {"image_width", real_field(&SynthConfig::image_width)},
      {"image_height", real_field(&SynthConfig::image_height)},
      {"face_min_size", real_field(&SynthConfig::face_min_size)},
      {"face_max_size", real_field(&SynthConfig::face_max_size)},
      {"seed", count_field(&SynthConfig::seed)},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Normal(mean, sigma) restricted to [kScoreLow, kScoreHigh].
class TruncatedNormal {
 public:
  TruncatedNormal(double mean, double sigma)
      : dist_(mean, sigma),
        lo_(boost::math::cdf(dist_, kScoreLow)),
        hi_(boost::math::cdf(dist_, kScoreHigh)) {}

  double mass() const { return hi_ - lo_; }

  double cdf(double x) const {
    if (x <= kScoreLow) return 0.0;
    if (x >= kScoreHigh) return 1.0;
    return (boost::math::cdf(dist_, x) - lo_) / mass();
  }

  double pdf(double x) const {
    if (x < kScoreLow || x > kScoreHigh) return 0.0;
    return boost::math::pdf(dist_, x) / mass();
  }

  template <typename Rng>
  double sample(Rng& rng) const {
    boost::random::uniform_real_distribution<double> u(lo_, hi_);
    const double p = std::clamp(u(rng), lo_, hi_);
    if (p <= 0.0) return kScoreLow;
    if (p >= 1.0) return kScoreHigh;
    return std::clamp(boost::math::quantile(dist_, p), kScoreLow, kScoreHigh);
  }

 private:
  boost::math::normal_distribution<double> dist_;
  double lo_;
  double hi_;
};

double beta_survival(double alpha, double beta, double x) {
  if (x <= 0.0) return 1.0;
  if (x > 1.0) return 0.0;
  return boost::math::cdf(boost::math::complement(boost::math::beta_distribution<double>(alpha, beta), x));
}

std::string image_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "img%06zu", i + 1);
  return buf;
}

}  // namespace

void SynthConfig::validate() const {
  const auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  };
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  const auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be >= 0");
  };
  if (num_images == 0) throw std::invalid_argument("num_images must be >= 1");
  if (gallery_size == 0) throw std::invalid_argument("gallery_size must be >= 1");
  non_negative(faces_per_image, "faces_per_image");
  non_negative(fp_per_image, "fp_per_image");
  prob(known_fraction, "known_fraction");
  prob(p_detect, "p_detect");
  positive(tp_alpha, "tp_alpha");
  positive(tp_beta, "tp_beta");
  positive(fp_alpha, "fp_alpha");
  positive(fp_beta, "fp_beta");
  positive(match_sigma, "match_sigma");
  positive(nonmatch_sigma, "nonmatch_sigma");
  if (!std::isfinite(match_mean) || !std::isfinite(nonmatch_mean)) {
    throw std::invalid_argument("similarity means must be finite");
  }
  positive(image_width, "image_width");
  positive(image_height, "image_height");
  positive(face_min_size, "face_min_size");
  if (!(face_max_size >= face_min_size)) throw std::invalid_argument("face_max_size must be >= face_min_size");
  if (face_max_size * 1.25 > image_height || face_max_size > image_width) {
    throw std::invalid_argument("faces of face_max_size do not fit into the image extent");
  }
  if (TruncatedNormal(match_mean, match_sigma).mass() < 1e-12 ||
      TruncatedNormal(nonmatch_mean, nonmatch_sigma).mass() < 1e-12) {
    throw std::invalid_argument("similarity distribution has no mass inside [-1, 1]");
  }
}

void set_synth_field(SynthConfig& config, const std::string& key, const std::string& value) {
  const auto it = fields().find(key);
  if (it == fields().end()) throw std::invalid_argument("synth config: unknown key '" + key + "'");
  try {
    it->second.set(config, value);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("synth config: bad value '" + value + "' for " + key);
  }
}

std::vector<std::string> synth_field_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : fields()) out.push_back(name);
  return out;
}

SynthConfig parse_synth_config(std::istream& in) {
  SynthConfig config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("synth config line " + std::to_string(number) +
                                  ": expected key = value");
    }
    set_synth_field(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.validate();
  return config;
}

SynthConfig parse_synth_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open synth config " + path.string());
  return parse_synth_config(in);
}

std::string serialize_synth_config(const SynthConfig& config) {
  std::string out;
  for (const auto& [name, field] : fields()) out += name + " = " + field.get(config) + "\n";
  return out;
}

std::vector<Detection> SynthData::detections() const {
  std::vector<Detection> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.detection);
  return out;
}

SynthData generate(const SynthConfig& config) {
  config.validate();
  boost::random::mt19937_64 rng(config.seed);

  SynthData data;
  for (std::size_t g = 0; g < config.gallery_size; ++g) {
    data.gallery.subject_ids.push_back(static_cast<int>(g + 1));
  }

  boost::random::poisson_distribution<int, double> face_count(
      std::max(config.faces_per_image, 1e-300));
  boost::random::poisson_distribution<int, double> fp_count(std::max(config.fp_per_image, 1e-300));
  boost::random::bernoulli_distribution<double> is_known(config.known_fraction);
  boost::random::bernoulli_distribution<double> detected(config.p_detect);
  boost::random::uniform_int_distribution<std::size_t> identity(0, config.gallery_size - 1);
  boost::random::uniform_real_distribution<double> size_dist(config.face_min_size,
                                                             config.face_max_size);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  boost::random::uniform_real_distribution<double> shift(-0.05, 0.05);
  boost::random::uniform_real_distribution<double> scale(0.92, 1.08);
  boost::random::beta_distribution<double> tp_conf(config.tp_alpha, config.tp_beta);
  boost::random::beta_distribution<double> fp_conf(config.fp_alpha, config.fp_beta);
  const TruncatedNormal match(config.match_mean, config.match_sigma);
  const TruncatedNormal nonmatch(config.nonmatch_mean, config.nonmatch_sigma);
  const auto G = static_cast<Eigen::Index>(config.gallery_size);

  const auto random_box = [&] {
    const double w = size_dist(rng);
    const double h = 1.25 * w;
    return BoundingBox{unit(rng) * (config.image_width - w), unit(rng) * (config.image_height - h), w, h};
  };
  const auto nonmatch_row = [&] {
    Eigen::VectorXd row(G);
    for (Eigen::Index k = 0; k < G; ++k) row[k] = nonmatch.sample(rng);
    return row;
  };

  for (std::size_t i = 0; i < config.num_images; ++i) {
    const auto image = image_name(i);
    data.truth.image_ids.push_back(image);
    const int n_faces = config.faces_per_image > 0.0 ? face_count(rng) : 0;

    std::vector<GroundTruthFace> faces;
    for (int f = 0; f < n_faces; ++f) {
      BoundingBox box;
      int attempt = 0;
      for (; attempt < kPlacementRetries; ++attempt) {
        box = random_box();
        const bool clear = std::none_of(faces.begin(), faces.end(),
                                        [&](const auto& o) { return iou(box, o.box) >= 0.05; });
        if (clear) break;
      }
      if (attempt == kPlacementRetries) {
        throw std::runtime_error(
            "synth: could not place face " + std::to_string(f + 1) + " of " + image +
            " without overlap; lower faces_per_image or face_max_size, or enlarge the image extent");
      }
      const int label = is_known(rng) ? data.gallery.subject_ids[identity(rng)] : kUnknownLabel;
      faces.push_back({image, "f" + std::to_string(f + 1), label, box, false});
    }

    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!detected(rng)) continue;
      const auto& truth = faces[f].box;
      BoundingBox box = truth;
      for (int attempt = 0; attempt < kPlacementRetries; ++attempt) {
        const double w = truth.width * scale(rng);
        const double h = truth.height * scale(rng);
        const BoundingBox cand{truth.x + shift(rng) * truth.width, truth.y + shift(rng) * truth.height, w, h};
        bool ok = iou(cand, truth) >= 0.5;
        for (std::size_t o = 0; ok && o < faces.size(); ++o) {
          if (o != f && iou(cand, faces[o].box) >= 0.2) ok = false;
        }
        if (ok) {
          box = cand;
          break;
        }
      }
      Detection det{image, tp_conf(rng), box};
      Eigen::VectorXd row = nonmatch_row();
      if (!faces[f].is_unknown()) {
        row[static_cast<Eigen::Index>(*data.gallery.position_of(faces[f].subject_label))] = match.sample(rng);
      }
      data.records.push_back({std::move(det), std::move(row)});
    }

    const int n_fp = config.fp_per_image > 0.0 ? fp_count(rng) : 0;
    for (int k = 0; k < n_fp; ++k) {
      BoundingBox box;
      int attempt = 0;
      for (; attempt < kPlacementRetries; ++attempt) {
        box = random_box();
        const bool clear = std::none_of(faces.begin(), faces.end(),
                                        [&](const auto& o) { return iou(box, o.box) >= 0.2; });
        if (clear) break;
      }
      if (attempt == kPlacementRetries) {
        throw std::runtime_error("synth: could not place a background detection in " + image +
                                 "; lower fp_per_image or faces_per_image, or enlarge the image extent");
      }
      data.records.push_back({Detection{image, fp_conf(rng), box}, nonmatch_row()});
    }

    data.truth.faces.insert(data.truth.faces.end(), faces.begin(), faces.end());
  }
  return data;
}

void write_synth_files(const SynthData& data, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  csv::write_file_atomic(out_dir / "gallery.csv", serialize_gallery(data.gallery));
  csv::write_file_atomic(out_dir / "ground_truth.csv", serialize_ground_truth(data.truth));
  csv::write_file_atomic(out_dir / "detections.csv", serialize_detections(data.detections()));
  csv::write_file_atomic(out_dir / "scores.csv", serialize_scores(data.records, data.gallery));
}

SynthExpectations::SynthExpectations(SynthConfig config) : config_(std::move(config)) {
  config_.validate();
}

double SynthExpectations::tpdr(double threshold) const {
  return config_.p_detect * beta_survival(config_.tp_alpha, config_.tp_beta, threshold);
}

double SynthExpectations::fpdpi(double threshold) const {
  return config_.fp_per_image * beta_survival(config_.fp_alpha, config_.fp_beta, threshold);
}

double SynthExpectations::match_cdf(double x) const {
  return TruncatedNormal(config_.match_mean, config_.match_sigma).cdf(x);
}

double SynthExpectations::nonmatch_cdf(double x) const {
  return TruncatedNormal(config_.nonmatch_mean, config_.nonmatch_sigma).cdf(x);
}

double SynthExpectations::tpir(double threshold) const {
  const double lo = std::max(threshold, kScoreLow);
  if (lo >= kScoreHigh) return 0.0;
  const TruncatedNormal match(config_.match_mean, config_.match_sigma);
  const TruncatedNormal nonmatch(config_.nonmatch_mean, config_.nonmatch_sigma);
  const double others = static_cast<double>(config_.gallery_size - 1);
  // P(match >= threshold and match beats every non-match column).
  const auto integrand = [&](double x) { return match.pdf(x) * std::pow(nonmatch.cdf(x), others); };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, lo, kScoreHigh, 15, 1e-12, &error);
  return config_.p_detect * value;
}

double SynthExpectations::curr(double threshold) const {
  return std::pow(nonmatch_cdf(threshold), static_cast<double>(config_.gallery_size));
}

double SynthExpectations::fpipi(double threshold) const {
  const double unknown_per_image =
      config_.faces_per_image * (1.0 - config_.known_fraction) * config_.p_detect +
      config_.fp_per_image;
  return unknown_per_image * (1.0 - curr(threshold));
}

double SynthExpectations::tpipi(double threshold) const {
  return tpir(threshold) * config_.faces_per_image * config_.known_fraction;
}

std::vector<ExpectedRow> expectations(const SynthConfig& config,
                                      const std::vector<double>& thresholds) {
  const SynthExpectations e(config);
  std::vector<ExpectedRow> rows;
  rows.reserve(thresholds.size());
  for (const double t : thresholds) {
    rows.push_back({t, e.tpdr(t), e.fpdpi(t), e.tpir(t), e.fpipi(t), e.tpipi(t), e.curr(t)});
  }
  return rows;
}

std::string serialize_expectations(const std::vector<ExpectedRow>& rows) {
  std::string out = "THRESHOLD,TPDR,FPDPI,TPIR,FPIPI,TPIPI,CURR\n";
  for (const auto& r : rows) {
    for (const double v : {r.threshold, r.tpdr, r.fpdpi, r.tpir, r.fpipi, r.tpipi}) {
      out += csv::format_real(v);
      out += ',';
    }
    out += csv::format_real(r.curr);
    out += '\n';
  }
  return out;
}

}  // namespace oseval
