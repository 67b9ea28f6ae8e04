#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "cli_scenarios.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using namespace oseval;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("oseval_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("every subcommand writes its declared outputs") {
  TempDir tmp("cli");
  REQUIRE(testing::prepare_cli_data(tmp.path / "data") == 0);
  for (const auto& r : testing::all_subcommands(tmp.path / "data", tmp.path / "out")) {
    CAPTURE(r.name);
    const auto res = run(r.args);
    CHECK(res.code == cli::kOk);
    for (const auto& f : r.outputs) CHECK(fs::exists(tmp.path / "out" / r.name / f));
    // No temporary leftovers from atomic writes.
    for (const auto& e : fs::directory_iterator(tmp.path / "out" / r.name)) {
      CHECK(e.path().extension() != ".tmp");
    }
  }
  const auto ranking = testing::snapshot(tmp.path / "out" / "rank-det").at("ranking.md");
  CHECK(ranking.find("| one |") != std::string::npos);
  CHECK(ranking.find("| two |") != std::string::npos);
  CHECK(ranking.find("**") != std::string::npos);
}

TEST_CASE("usage errors exit with 2 and name the flag") {
  const auto missing = run({"eval-det", "--detections", "d.csv", "--out-dir", "o"});
  CHECK(missing.code == cli::kUsage);
  CHECK(missing.err.find("--gt") != std::string::npos);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"eval-det", "--gt", "g", "--detections", "d", "--out-dir", "o", "--targets", "0.1,0.01"}).code ==
        cli::kUsage);
  CHECK(run({"eval-det", "--gt", "g", "--detections", "d", "--out-dir", "o", "--targets", "0,1"}).code ==
        cli::kUsage);
  CHECK(run({"eval-det", "--gt", "g", "--detections", "d", "--out-dir", "o", "--iou", "1.5"}).code ==
        cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("refusals exit with 1") {
  TempDir tmp("refuse");
  write(tmp.path / "gallery.csv", "");
  write(tmp.path / "gt.csv", "IMAGE,FACE_ID,SUBJECT_ID,X,Y,WIDTH,HEIGHT\na,1,7,0,0,10,10\n");
  write(tmp.path / "scores.csv", "IMAGE,SCORE,X,Y,WIDTH,HEIGHT,S_7\na,0.9,0,0,10,10,0.5\n");
  const auto empty_gallery = run({"eval-id", "--gt", (tmp.path / "gt.csv").string(), "--gallery",
                                  (tmp.path / "gallery.csv").string(), "--scores",
                                  (tmp.path / "scores.csv").string(), "--out-dir", (tmp.path / "o").string()});
  CHECK(empty_gallery.code == cli::kRefused);
  CHECK(empty_gallery.err.find("gallery") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.path / "o" / "oroc.csv"));

  const auto missing_file = run({"eval-det", "--gt", (tmp.path / "nope.csv").string(), "--detections",
                                 (tmp.path / "nope.csv").string(), "--out-dir", (tmp.path / "o").string()});
  CHECK(missing_file.code == cli::kRefused);

  // Nothing to reject in either unknown set.
  write(tmp.path / "g7.csv", "SUBJECT_ID\n7\n");
  const auto no_unknowns = run({"eval-unknowns", "--gt", (tmp.path / "gt.csv").string(), "--gallery",
                                (tmp.path / "g7.csv").string(), "--scores", (tmp.path / "scores.csv").string(),
                                "--out-dir", (tmp.path / "u").string()});
  CHECK(no_unknowns.code == cli::kRefused);
}

TEST_CASE("lint reports without refusing") {
  TempDir tmp("lint");
  write(tmp.path / "gt.csv", "IMAGE,FACE_ID,SUBJECT_ID,X,Y,WIDTH,HEIGHT\na,1,7,0,0,10,10\n");
  write(tmp.path / "det.csv", "IMAGE,SCORE,X,Y,WIDTH,HEIGHT\na,0.9,0,0,10,10\na,0.9,0,0,10,10\nzz,0.1,0,0,5,5\n");
  const auto res = run({"lint", "--gt", (tmp.path / "gt.csv").string(), "--detections",
                        (tmp.path / "det.csv").string(), "--out-dir", (tmp.path / "o").string()});
  CHECK(res.code == cli::kOk);
  const auto csv = testing::snapshot(tmp.path / "o").at("lint.csv");
  CHECK(csv.find("duplicate") != std::string::npos);
  CHECK(csv.find("zz") != std::string::npos);
}

TEST_CASE("inputs are left untouched") {
  TempDir tmp("inputs");
  REQUIRE(testing::prepare_cli_data(tmp.path / "data") == 0);
  const auto before = testing::snapshot(tmp.path / "data");
  for (const auto& r : testing::all_subcommands(tmp.path / "data", tmp.path / "out")) run(r.args);
  CHECK(testing::snapshot(tmp.path / "data") == before);
}
