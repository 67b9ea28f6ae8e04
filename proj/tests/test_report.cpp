
#include "doctest.h"
#include "oseval/report.hpp"
#include "oseval/svg.hpp"

using namespace oseval;

namespace {

RankingRow ranking(std::string name, std::vector<std::optional<double>> values) {
  RankingRow r;
  r.method = std::move(name);
  const std::vector<double> targets{1e-3, 1e-2, 1e-1, 1.0};
  for (std::size_t i = 0; i < values.size(); ++i) {
    TargetValue v;
    v.target = targets[i];
    v.achieved = values[i].has_value();
    v.value = values[i].value_or(0.0);
    r.values_at_targets.push_back(v);
    r.sum += v.value;
  }
  return r;
}

Curve line(std::vector<std::pair<double, double>> xy) {
  Curve c;
  c.x_label = "FPDPI";
  c.y_label = "TPDR";
  double t = 1.0;
  for (const auto& [x, y] : xy) {
    c.points.push_back({t, x, y, 0, 0});
    t -= 0.1;
  }
  return c;
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("ranking layout") {
  const auto t = emit_ranking({ranking("B", {0.1, 0.2, 0.3, 0.4}), ranking("A", {std::nullopt, 0.5, 0.6, 0.7}),
                               ranking("C", {0.1, 0.2, 0.3, 0.4})},
                              Task::detection);
  const auto lines = [&] {
    std::vector<std::string> out;
    std::string cur;
    for (char c : t.markdown) {
      if (c == '\n') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    return out;
  }();
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "| Method | @FPDPI 10^-3 | @FPDPI 10^-2 | @FPDPI 10^-1 | @FPDPI 10^0 | ΣTPDR |");
  CHECK(lines[2] == "| A |  | **0.5000** | **0.6000** | **0.7000** | **1.8000** |");
  CHECK(lines[3].rfind("| B | **0.1000** |", 0) == 0);
  CHECK(lines[4].rfind("| C | **0.1000** |", 0) == 0);
  CHECK(t.csv.substr(0, t.csv.find('\n')) ==
        "METHOD,TPDR@FPDPI=0.001,TPDR@FPDPI=0.01,TPDR@FPDPI=0.1,TPDR@FPDPI=1,SUM_TPDR");
  CHECK(t.csv.find("\nA,,0.5,0.6,0.7,") != std::string::npos);
}

TEST_CASE("ranking edge cases") {
  const auto none = emit_ranking({ranking("solo", {std::nullopt, std::nullopt, std::nullopt, std::nullopt})},
                                 Task::identification);
  CHECK(none.markdown.find("| solo |  |  |  |  | **0.0000** |") != std::string::npos);
  CHECK(none.markdown.find("ΣTPIR") != std::string::npos);
  CHECK(none.markdown.find("@FPIPI 10^-3") != std::string::npos);
  CHECK_THROWS_AS(emit_ranking({}, Task::detection), std::invalid_argument);
  CHECK(target_label(0.05) == "0.05");
  CHECK(target_label(100) == "10^2");
}

TEST_CASE("closed-set table") {
  const std::vector<ClosedSetRow> rows{{"M", {0.5, 0.25, 1.5}}};
  CHECK(closed_set_markdown(rows).find("| M | 50.00 | 25.00 | 1.500 |") != std::string::npos);
  CHECK(closed_set_csv(rows) == "METHOD,TPDR,TPIR,FPIPI\nM,0.5,0.25,1.5\n");
}

TEST_CASE("curve csv and transfer csv") {
  auto c = line({{0, 0}, {0.5, 0.25}});
  c.points[0].threshold = kInfinity;
  CHECK(curve_csv(c) == "THRESHOLD,FPDPI,TPDR\ninf,0,0\n0.9,0.5,0.25\n");
  TransferReport r;
  r.rows.push_back({0.1, true, 0.5, 0.1, 0.2, 0.3, 0.4});
  r.rows.push_back({1.0, false, kInfinity, 0.0, std::nullopt, std::nullopt, std::nullopt});
  CHECK(transfer_csv(r) ==
        "TARGET,THRESHOLD,CAL_X,EVAL_X,EVAL_Y,EVAL_Y_AT_EVAL_THRESHOLD\n0.1,0.5,0.1,0.2,0.3,0.4\n1,inf,0,,,\n");
}

TEST_CASE("svg structure") {
  const AxesSpec axes{"FROC", "FPDPI", "TPDR", AxisScale::log10};
  const auto one = render_svg({{"m", line({{0.001, 0.1}, {0.01, 0.3}, {1.0, 0.9}})}}, axes);
  CHECK(count(one, "<polyline") == 1);
  const auto points_attr = one.substr(one.find("points=\"") + 8);
  const auto pts = points_attr.substr(0, points_attr.find('"'));
  CHECK(count(pts, ",") == 3);
  CHECK(count(one, "class=\"grid-x\"") == 4);
  CHECK(one.find("footnote") == std::string::npos);
  CHECK(one.find("http://") == one.find("http://www.w3.org/2000/svg"));

  const auto two = render_svg({{"first", line({{0.0, 0.1}, {0.5, 0.2}})}, {"second", line({{0.1, 0.3}})}}, axes);
  CHECK(count(two, "<polyline") == 2);
  CHECK(two.find(">first<") < two.find(">second<"));
  CHECK(two.find("class=\"footnote\"") != std::string::npos);

  CHECK_THROWS_AS(render_svg({{"z", line({{0.0, 0.1}, {0.0, 0.2}})}}, axes), std::invalid_argument);
  CHECK_THROWS_AS(render_svg({{"e", Curve{}}}, axes), std::invalid_argument);
  CHECK_NOTHROW(render_svg({{"z", line({{0.0, 0.1}, {0.0, 0.2}})}}, {"t", "x", "y", AxisScale::linear}));
}
