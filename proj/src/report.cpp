#include "oseval/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "oseval/csv.hpp"

namespace oseval {

namespace {

std::string csv_cell(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string opt_real(const std::optional<double>& v) { return v ? csv::format_real(*v) : ""; }

}  // namespace

std::string target_label(double target) {
  if (target > 0.0) {
    const double e = std::round(std::log10(target));
    if (std::abs(e) < 300 && std::pow(10.0, e) == target) {
      return "10^" + std::to_string(static_cast<int>(e));
    }
  }
  return csv::format_real(target);
}

RankingTables emit_ranking(std::vector<RankingRow> rows, Task task) {
  if (rows.empty()) throw std::invalid_argument("ranking needs at least one method");
  const std::size_t n_targets = rows.front().values_at_targets.size();
  for (const auto& r : rows) {
    if (r.values_at_targets.size() != n_targets) {
      throw std::invalid_argument("ranking rows disagree on the number of targets");
    }
  }
  std::sort(rows.begin(), rows.end(), [](const RankingRow& a, const RankingRow& b) {
    if (a.sum != b.sum) return a.sum > b.sum;
    return a.method < b.method;
  });

  const bool det = task == Task::detection;
  const std::string x_name = det ? "FPDPI" : "FPIPI";
  const std::string y_name = det ? "TPDR" : "TPIR";

  // Best value per column, compared on the printed 4-decimal value.
  std::vector<std::string> best(n_targets + 1);
  const auto consider = [&](std::size_t col, double v) {
    const auto s = csv::format_fixed(v, 4);
    if (best[col].empty() || *csv::parse_real(s) > *csv::parse_real(best[col])) best[col] = s;
  };
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < n_targets; ++i) {
      if (r.values_at_targets[i].achieved) consider(i, r.values_at_targets[i].value);
    }
    consider(n_targets, r.sum);
  }
  const auto mark = [&](std::size_t col, double v) {
    const auto s = csv::format_fixed(v, 4);
    return s == best[col] ? "**" + s + "**" : s;
  };

  RankingTables out;
  auto& md = out.markdown;
  md = "| Method |";
  for (const auto& t : rows.front().values_at_targets) md += " @" + x_name + " " + target_label(t.target) + " |";
  md += " Σ" + y_name + " |\n|---|";
  for (std::size_t i = 0; i < n_targets; ++i) md += "---:|";
  md += "---:|\n";
  for (const auto& r : rows) {
    md += "| " + md_cell(r.method) + " |";
    for (std::size_t i = 0; i < n_targets; ++i) {
      const auto& v = r.values_at_targets[i];
      md += v.achieved ? " " + mark(i, v.value) + " |" : "  |";
    }
    md += " " + mark(n_targets, r.sum) + " |\n";
  }

  auto& c = out.csv;
  c = "METHOD";
  for (const auto& t : rows.front().values_at_targets) c += "," + y_name + "@" + x_name + "=" + csv::format_real(t.target);
  c += ",SUM_" + y_name + "\n";
  for (const auto& r : rows) {
    c += csv_cell(r.method);
    for (const auto& v : r.values_at_targets) c += "," + (v.achieved ? csv::format_real(v.value) : "");
    c += "," + csv::format_real(r.sum) + "\n";
  }
  return out;
}

std::string closed_set_csv(const std::vector<ClosedSetRow>& rows) {
  std::string out = "METHOD,TPDR,TPIR,FPIPI\n";
  for (const auto& r : rows) {
    out += csv_cell(r.method) + "," + csv::format_real(r.summary.tpdr_closed) + "," +
           csv::format_real(r.summary.tpir_closed) + "," + csv::format_real(r.summary.fpipi_at_max) + "\n";
  }
  return out;
}

std::string closed_set_markdown(const std::vector<ClosedSetRow>& rows) {
  std::string out = "| Method | TPDR (%) | TPIR (%) | FPIPI |\n|---|---:|---:|---:|\n";
  for (const auto& r : rows) {
    out += "| " + md_cell(r.method) + " | " + csv::format_fixed(100.0 * r.summary.tpdr_closed, 2) +
           " | " + csv::format_fixed(100.0 * r.summary.tpir_closed, 2) + " | " +
           csv::format_fixed(r.summary.fpipi_at_max, 3) + " |\n";
  }
  return out;
}

std::string curve_csv(const Curve& curve) {
  std::string out = "THRESHOLD," + curve.x_label + "," + curve.y_label + "\n";
  for (const auto& p : curve.points) {
    out += csv::format_real(p.threshold) + "," + csv::format_real(p.x) + "," + csv::format_real(p.y) + "\n";
  }
  return out;
}

std::string curve_sidecar(const Curve& curve, double iou_threshold, const std::string& method) {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["x"] = curve.x_label;
  j["y"] = curve.y_label;
  j["x_denominator"] = curve.x_denominator;
  j["y_denominator"] = curve.y_denominator;
  j["iou_threshold"] = iou_threshold;
  j["points"] = curve.points.size();
  return j.dump(2) + "\n";
}

std::string transfer_csv(const TransferReport& report) {
  std::string out = "TARGET,THRESHOLD,CAL_X,EVAL_X,EVAL_Y,EVAL_Y_AT_EVAL_THRESHOLD\n";
  for (const auto& r : report.rows) {
    out += csv::format_real(r.target) + "," + csv::format_real(r.threshold) + "," +
           csv::format_real(r.calibrated_x) + "," + opt_real(r.achieved_x) + "," +
           opt_real(r.achieved_y) + "," + opt_real(r.y_at_eval_threshold) + "\n";
  }
  return out;
}

std::string validation_csv(const ValidationReport& report) {
  std::string out = "SEVERITY,LOCATION,MESSAGE\n";
  for (const auto& e : report.errors) {
    out += std::string(e.severity == Severity::fatal ? "fatal" : "warning") + "," +
           csv_cell(e.location) + "," + csv_cell(e.message) + "\n";
  }
  out += "\nCOUNT,VALUE\n";
  for (const auto& [key, n] : report.counts) out += key + "," + std::to_string(n) + "\n";
  return out;
}

}  // namespace oseval
