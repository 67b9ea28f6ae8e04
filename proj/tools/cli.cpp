#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "oseval/csv.hpp"
#include "oseval/detection_eval.hpp"
#include "oseval/identification_eval.hpp"
#include "oseval/io.hpp"
#include "oseval/parallel.hpp"
#include "oseval/pipeline.hpp"
#include "oseval/report.hpp"
#include "oseval/svg.hpp"
#include "oseval/synthgen.hpp"
#include "oseval/threshold_transfer.hpp"

namespace oseval::cli {

namespace fs = std::filesystem;

namespace {

/// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string gt, gallery, detections, scores, out_dir;
  std::string cal_gt, cal_detections, cal_scores;
  std::string config;
  std::string method = "method";
  std::string task;
  std::vector<std::string> inputs;
  std::vector<std::string> overrides;
  double iou = kDefaultIouThreshold;
  std::vector<double> targets = kDefaultTargets;
};

struct NamedPath {
  std::string name;
  fs::path path;
};

std::vector<NamedPath> parse_inputs(const std::vector<std::string>& specs) {
  std::vector<NamedPath> out;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
      throw UsageError("--input expects NAME=PATH, got '" + s + "'");
    }
    out.push_back({s.substr(0, eq), s.substr(eq + 1)});
  }
  return out;
}

void check_targets(const std::vector<double>& targets) {
  if (targets.empty()) throw UsageError("--targets must list at least one value");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!(targets[i] > 0.0)) throw UsageError("--targets must be positive");
    if (i > 0 && !(targets[i] > targets[i - 1])) throw UsageError("--targets must be strictly increasing");
  }
}

void report_issues(const ValidationReport& report, std::ostream& err) {
  for (const auto& e : report.errors) {
    err << (e.severity == Severity::fatal ? "error: " : "warning: ") << e.location << ": " << e.message << "\n";
  }
}

class Writer {
 public:
  explicit Writer(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }
  void operator()(const std::string& name, const std::string& content) const {
    csv::write_file_atomic(dir_ / name, content);
  }

 private:
  fs::path dir_;
};

GroundTruth load_truth(const std::string& path, ValidationReport& report) {
  return parse_ground_truth(fs::path(path), report);
}

/// Parses and lints a detection-mode dataset; warnings go to `err`.
DetectionEvaluation load_detection_eval(const std::string& gt, const std::string& dets, double iou,
                                        std::ostream& err) {
  ValidationReport report;
  EvalDataset ds;
  auto truth = load_truth(gt, report);
  ds.detections = parse_detections(fs::path(dets), report);
  ds.image_ids = truth.image_ids;
  ds.faces = truth.faces;
  report.merge(lint(ds));
  report_issues(report, err);
  return evaluate_detections(truth, ds.detections, iou, worker_count());
}

IdentificationInput load_identification_eval(const std::string& gt, const Gallery& gallery,
                                             const std::string& scores, double iou,
                                             std::ostream& err) {
  ValidationReport report;
  EvalDataset ds;
  auto truth = load_truth(gt, report);
  ds.records = parse_scores(fs::path(scores), gallery, report);
  ds.image_ids = truth.image_ids;
  ds.faces = truth.faces;
  ds.gallery = gallery;
  report.merge(lint(ds));
  ValidationReport partition;
  auto input = evaluate_identification(truth, ds.records, gallery, iou, worker_count(), &partition);
  report.merge(partition);
  report_issues(report, err);
  return input;
}

Gallery load_gallery(const std::string& path) {
  ValidationReport report;
  return parse_gallery(fs::path(path), report);
}

int cmd_lint(const Options& o, std::ostream& out, std::ostream& err) {
  ValidationReport report;
  EvalDataset ds;
  std::optional<InputError> failure;
  const auto attempt = [&](auto&& fn) {
    try {
      fn();
    } catch (const InputError& e) {
      if (!failure) failure.emplace(e);
    }
  };
  attempt([&] {
    auto truth = load_truth(o.gt, report);
    ds.image_ids = std::move(truth.image_ids);
    ds.faces = std::move(truth.faces);
  });
  if (!o.gallery.empty()) attempt([&] { ds.gallery = parse_gallery(fs::path(o.gallery), report); });
  if (!o.detections.empty()) attempt([&] { ds.detections = parse_detections(fs::path(o.detections), report); });
  if (!o.scores.empty()) {
    if (o.gallery.empty()) throw UsageError("--scores requires --gallery");
    if (!ds.gallery.subject_ids.empty()) {
      attempt([&] { ds.records = parse_scores(fs::path(o.scores), ds.gallery, report); });
    }
  }
  if (!failure) report.merge(lint(ds));
  // Parsers append to the shared report before throwing, so it holds every issue.
  report_issues(report, out);
  out << report.num_fatal() << " fatal, " << report.num_warnings() << " warnings\n";
  if (!o.out_dir.empty()) Writer(o.out_dir)("lint.csv", validation_csv(report));
  if (report.has_fatal()) {
    err << "lint: input refused\n";
    return kRefused;
  }
  return kOk;
}

int cmd_eval_det(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ev = load_detection_eval(o.gt, o.detections, o.iou, err);
  const auto curve = froc(ev.classified, ev.num_images, ev.num_faces);
  const auto row = sum_tpdr(curve, o.targets, o.method);
  const Writer write(o.out_dir);
  write("froc.csv", curve_csv(curve));
  write("froc.json", curve_sidecar(curve, o.iou, o.method));
  write("froc.svg", render_svg({{o.method, curve}}, {"FROC", "FPDPI", "TPDR", AxisScale::log10}));
  write("summary.csv", emit_ranking({row}, Task::detection).csv);
  out << o.method << ": ΣTPDR = " << csv::format_fixed(row.sum, 4) << "\n";
  return kOk;
}

int cmd_eval_id(const Options& o, std::ostream& out, std::ostream& err) {
  const auto gallery = load_gallery(o.gallery);
  const auto input = load_identification_eval(o.gt, gallery, o.scores, o.iou, err);
  const auto curve = oroc(input);
  const auto row = sum_tpir(curve, o.targets, o.method);
  const Writer write(o.out_dir);
  write("oroc.csv", curve_csv(curve));
  write("oroc.json", curve_sidecar(curve, o.iou, o.method));
  write("oroc.svg", render_svg({{o.method, curve}}, {"O-ROC (rank 1)", "FPIPI", "TPIR", AxisScale::log10}));
  write("summary.csv", emit_ranking({row}, Task::identification).csv);
  out << o.method << ": ΣTPIR = " << csv::format_fixed(row.sum, 4) << "\n";
  return kOk;
}

int cmd_eval_unknowns(const Options& o, std::ostream& out, std::ostream& err) {
  const auto gallery = load_gallery(o.gallery);
  const auto input = load_identification_eval(o.gt, gallery, o.scores, o.iou, err);
  const Writer write(o.out_dir);
  std::vector<NamedCurve> plotted;
  const std::pair<UnknownKind, const char*> kinds[] = {
      {UnknownKind::unknown_faces, "unknown"}, {UnknownKind::false_positive_detections, "fpd"}};
  for (const auto& [kind, tag] : kinds) {
    try {
      auto curve = curr_tpipi(input, kind);
      write(std::string("curr_") + tag + ".csv", curve_csv(curve));
      plotted.push_back({o.method + (kind == UnknownKind::unknown_faces ? " U_-1" : " U_FPD"), std::move(curve)});
    } catch (const std::invalid_argument& e) {
      err << "warning: " << e.what() << "\n";
    }
  }
  if (plotted.empty()) {
    err << "eval-unknowns: no unknown probes of either type\n";
    return kRefused;
  }
  write("curr.svg", render_svg(plotted, {"Unknown rejection", "TPIPI", "CURR", AxisScale::log10}));
  out << "wrote " << plotted.size() << " CURR curve(s)\n";
  return kOk;
}

std::vector<NamedPath> method_inputs(const Options& o, const std::string& single_path) {
  auto inputs = parse_inputs(o.inputs);
  if (!single_path.empty()) inputs.insert(inputs.begin(), {o.method, single_path});
  if (inputs.empty()) throw UsageError("give --scores or at least one --input NAME=PATH");
  return inputs;
}

int cmd_closed_set(const Options& o, std::ostream& out, std::ostream& err) {
  const auto gallery = load_gallery(o.gallery);
  std::vector<ClosedSetRow> rows;
  for (const auto& m : method_inputs(o, o.scores)) {
    const auto input = load_identification_eval(o.gt, gallery, m.path.string(), o.iou, err);
    rows.push_back({m.name, closed_set(input)});
  }
  const Writer write(o.out_dir);
  write("closed_set.csv", closed_set_csv(rows));
  const auto md = closed_set_markdown(rows);
  write("closed_set.md", md);
  out << md;
  return kOk;
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream& err) {
  const auto inputs = parse_inputs(o.inputs);
  if (inputs.empty()) throw UsageError("rank needs at least one --input NAME=PATH");
  std::vector<RankingRow> rows;
  Task task = Task::detection;
  if (o.task == "detection") {
    for (const auto& m : inputs) {
      const auto ev = load_detection_eval(o.gt, m.path.string(), o.iou, err);
      rows.push_back(sum_tpdr(froc(ev.classified, ev.num_images, ev.num_faces), o.targets, m.name));
    }
  } else {
    if (o.gallery.empty()) throw UsageError("--gallery is required for --task identification");
    task = Task::identification;
    const auto gallery = load_gallery(o.gallery);
    for (const auto& m : inputs) {
      const auto input = load_identification_eval(o.gt, gallery, m.path.string(), o.iou, err);
      rows.push_back(sum_tpir(oroc(input), o.targets, m.name));
    }
  }
  const auto tables = emit_ranking(std::move(rows), task);
  const Writer write(o.out_dir);
  write("ranking.md", tables.markdown);
  write("ranking.csv", tables.csv);
  out << tables.markdown;
  return kOk;
}

int cmd_transfer_det(const Options& o, std::ostream& out, std::ostream& err) {
  const auto cal = load_detection_eval(o.cal_gt, o.cal_detections, o.iou, err);
  const auto ev = load_detection_eval(o.gt, o.detections, o.iou, err);
  const auto report = transfer_detection(froc(cal.classified, cal.num_images, cal.num_faces),
                                         ev.classified, ev.num_images, ev.num_faces, o.targets);
  const auto text = transfer_csv(report);
  Writer(o.out_dir)("transfer_det.csv", text);
  out << text;
  return kOk;
}

int cmd_transfer_id(const Options& o, std::ostream& out, std::ostream& err) {
  const auto gallery = load_gallery(o.gallery);
  const auto cal = load_identification_eval(o.cal_gt, gallery, o.cal_scores, o.iou, err);
  const auto ev = load_identification_eval(o.gt, gallery, o.scores, o.iou, err);
  const auto report = transfer_identification(oroc(cal), ev, o.targets);
  const auto text = transfer_csv(report);
  Writer(o.out_dir)("transfer_id.csv", text);
  out << text;
  return kOk;
}

int cmd_synth(const Options& o, const std::map<std::string, std::string>& flags, std::ostream& out) {
  SynthConfig config = o.config.empty() ? SynthConfig{} : parse_synth_config(fs::path(o.config));
  for (const auto& [key, value] : flags) set_synth_field(config, key, value);
  config.validate();
  const auto data = generate(config);
  write_synth_files(data, o.out_dir);
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k / 20.0);
  const Writer write(o.out_dir);
  write("synth_config.txt", serialize_synth_config(config));
  write("expectations.csv", serialize_expectations(expectations(config, grid)));
  out << "generated " << data.truth.image_ids.size() << " images, " << data.truth.faces.size() << " faces, "
      << data.records.size() << " detections\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Open-set face detection and watchlist identification evaluation", "oseval"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--iou", o.iou, "IoU acceptance threshold")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    sub->add_option("--targets", o.targets, "Operating budgets, strictly increasing")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--method", o.method, "Method name used in reports")->capture_default_str();
  };

  auto* lint_cmd = app.add_subcommand("lint", "Validate input files and report problems");
  lint_cmd->add_option("--gt", o.gt, "Ground-truth CSV")->required();
  lint_cmd->add_option("--gallery", o.gallery, "Gallery manifest");
  lint_cmd->add_option("--detections", o.detections, "Detection CSV");
  lint_cmd->add_option("--scores", o.scores, "Score CSV");
  lint_cmd->add_option("--out-dir", o.out_dir, "Write lint.csv here");

  auto* det = app.add_subcommand("eval-det", "FROC and ΣTPDR of one detector");
  det->add_option("--gt", o.gt, "Ground-truth CSV")->required();
  det->add_option("--detections", o.detections, "Detection CSV")->required();
  det->add_option("--out-dir", o.out_dir, "Output directory")->required();
  add_common(det);

  auto* id = app.add_subcommand("eval-id", "O-ROC and ΣTPIR of one identification system");
  id->add_option("--gt", o.gt, "Ground-truth CSV")->required();
  id->add_option("--gallery", o.gallery, "Gallery manifest")->required();
  id->add_option("--scores", o.scores, "Score CSV")->required();
  id->add_option("--out-dir", o.out_dir, "Output directory")->required();
  add_common(id);

  auto* unk = app.add_subcommand("eval-unknowns", "CURR over TPIPI for unknown faces and false detections");
  unk->add_option("--gt", o.gt, "Ground-truth CSV")->required();
  unk->add_option("--gallery", o.gallery, "Gallery manifest")->required();
  unk->add_option("--scores", o.scores, "Score CSV")->required();
  unk->add_option("--out-dir", o.out_dir, "Output directory")->required();
  add_common(unk);

  auto* closed = app.add_subcommand("closed-set", "Closed-set TPDR/TPIR/FPIPI table");
  closed->add_option("--gt", o.gt, "Ground-truth CSV")->required();
  closed->add_option("--gallery", o.gallery, "Gallery manifest")->required();
  closed->add_option("--scores", o.scores, "Score CSV (named by --method)");
  closed->add_option("--input", o.inputs, "Additional NAME=SCORES_CSV");
  closed->add_option("--out-dir", o.out_dir, "Output directory")->required();
  add_common(closed);

  auto* rank = app.add_subcommand("rank", "Ranking table over several methods");
  rank->add_option("--task", o.task, "detection or identification")
      ->required()
      ->check(CLI::IsMember({"detection", "identification"}));
  rank->add_option("--gt", o.gt, "Ground-truth CSV")->required();
  rank->add_option("--gallery", o.gallery, "Gallery manifest (identification)");
  rank->add_option("--input", o.inputs, "NAME=PATH of a detection or score CSV")->required();
  rank->add_option("--out-dir", o.out_dir, "Output directory")->required();
  add_common(rank);

  auto* tdet = app.add_subcommand("transfer-det", "Apply FPDPI thresholds calibrated on another dataset");
  tdet->add_option("--cal-gt", o.cal_gt, "Calibration ground truth")->required();
  tdet->add_option("--cal-detections", o.cal_detections, "Calibration detections")->required();
  tdet->add_option("--gt", o.gt, "Evaluation ground truth")->required();
  tdet->add_option("--detections", o.detections, "Evaluation detections")->required();
  tdet->add_option("--out-dir", o.out_dir, "Output directory")->required();
  add_common(tdet);

  auto* tid = app.add_subcommand("transfer-id", "Apply FPIPI thresholds calibrated on another dataset");
  tid->add_option("--cal-gt", o.cal_gt, "Calibration ground truth")->required();
  tid->add_option("--cal-scores", o.cal_scores, "Calibration scores")->required();
  tid->add_option("--gallery", o.gallery, "Gallery manifest")->required();
  tid->add_option("--gt", o.gt, "Evaluation ground truth")->required();
  tid->add_option("--scores", o.scores, "Evaluation scores")->required();
  tid->add_option("--out-dir", o.out_dir, "Output directory")->required();
  add_common(tid);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic scenario and its expected metrics");
  synth->add_option("--config", o.config, "key = value configuration file");
  synth->add_option("--out-dir", o.out_dir, "Output directory")->required();
  std::map<std::string, std::string> synth_flags;
  std::map<std::string, std::string> synth_values;
  for (const auto& name : synth_field_names()) {
    std::string flag = name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    synth->add_option("--" + flag, synth_values[name], "Override " + name);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    check_targets(o.targets);
    if (*lint_cmd) return cmd_lint(o, out, err);
    if (*det) return cmd_eval_det(o, out, err);
    if (*id) return cmd_eval_id(o, out, err);
    if (*unk) return cmd_eval_unknowns(o, out, err);
    if (*closed) return cmd_closed_set(o, out, err);
    if (*rank) return cmd_rank(o, out, err);
    if (*tdet) return cmd_transfer_det(o, out, err);
    if (*tid) return cmd_transfer_id(o, out, err);
    if (*synth) {
      for (const auto& [name, value] : synth_values) {
        std::string flag = name;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (synth->count("--" + flag) > 0) synth_flags[name] = value;
      }
      return cmd_synth(o, synth_flags, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    report_issues(e.report(), err);
    err << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const std::exception& e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  }
  return kUsage;
}

}  // namespace oseval::cli
