// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(ARESD_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::ostringstream out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.write(buf, static_cast<long>(n));
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out.str()};
}

std::string fixtures() { return ARES_FIXTURE_DIR; }

std::string slurp(const fs::path& p) { return test_support::read_file(p.string()); }

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("learn writes the golden pattern and exits zero") {
  fs::path out = fresh_dir("aresd_cli_learn") / "p.ares";
  RunResult r = run("learn --examples " + fixtures() + "/groups/loop_rewrite --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(slurp(out) == slurp(fixtures() + "/golden/loop_rewrite.ares"));
}

TEST_CASE("learning from zero-overlap changes exits with code 2") {
  fs::path out = fresh_dir("aresd_cli_abort") / "p.ares";
  RunResult r = run("learn --examples " + fixtures() + "/isolation/zero_overlap --out " +
                    out.string());
  CHECK(r.exit_code == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("missing inputs exit with code 1") {
  RunResult r = run("learn --examples /nonexistent-dir --out /tmp/never.ares");
  CHECK(r.exit_code == 1);
  RunResult r2 = run("diff /nonexistent-a.java /nonexistent-b.java");
  CHECK(r2.exit_code == 1);
}

TEST_CASE("diff emits the documented JSON shape") {
  fs::path dir = fresh_dir("aresd_cli_diff");
  test_support::read_file;  // silence unused warning paths
  {
    std::ofstream a(dir / "a.java");
    a << "{ int j = 0; }";
    std::ofstream b(dir / "b.java");
    b << "{ int k = 0; }";
  }
  RunResult r = run("diff " + (dir / "a.java").string() + " " + (dir / "b.java").string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"schemaVersion\": 1") != std::string::npos);
  CHECK(r.output.find("\"kind\": \"update\"") != std::string::npos);
  CHECK(r.output.find("\"newLabel\": \"k\"") != std::string::npos);
  CHECK(r.output.find("\"mappingSize\"") != std::string::npos);
}

TEST_CASE("order prints the processing order") {
  RunResult r = run("order --examples " + fixtures() + "/distance_matrix");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "c2\nc3\nc4\nc1\n");
}

TEST_CASE("pipeline artifacts are deterministic across runs") {
  fs::path out1 = fresh_dir("aresd_cli_pipe1");
  fs::path out2 = fresh_dir("aresd_cli_pipe2");
  std::string base = "pipeline --examples " + fixtures() + "/groups/loop_rewrite --codebase " +
                     fixtures() + "/corpus/loop_rewrite --truth " + fixtures() + "/truth/loop_rewrite --out ";
  RunResult r1 = run(base + out1.string());
  RunResult r2 = run(base + out2.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  for (const char* rel : {"pattern.ares", "matches.json", "report.json", "recs/manifest.json",
                          "recs/location1.java/m2/variant-1.java"}) {
    CAPTURE(rel);
    CHECK(slurp(out1 / rel) == slurp(out2 / rel));
  }
  // search matched all three planted locations and the report scored them
  std::string report = slurp(out1 / "report.json");
  CHECK(report.find("\"matches\": 3") != std::string::npos);
  CHECK(report.find("\"precision\": 100.0") != std::string::npos);
  CHECK(report.find("\"recall\": 75.0") != std::string::npos);
}

TEST_CASE("pipeline on an empty codebase succeeds with zero recommendations") {
  fs::path empty = fresh_dir("aresd_cli_empty_codebase");
  fs::path out = fresh_dir("aresd_cli_empty_out");
  RunResult r = run("pipeline --examples " + fixtures() + "/groups/loop_rewrite --codebase " +
                    empty.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  std::string report = slurp(out / "report.json");
  CHECK(report.find("\"matches\": 0") != std::string::npos);
  CHECK(report.find("\"recommendations\": 0") != std::string::npos);
}

TEST_CASE("search and evaluate round-trip through files") {
  fs::path dir = fresh_dir("aresd_cli_eval");
  fs::path pattern = dir / "p.ares";
  REQUIRE(run("learn --examples " + fixtures() + "/groups/loop_rewrite --out " + pattern.string())
              .exit_code == 0);
  RunResult search = run("search --pattern " + pattern.string() + " --codebase " + fixtures() +
                         "/corpus/loop_rewrite --format text");
  CHECK(search.exit_code == 0);
  CHECK(search.output == "location1.java m2\nlocation2.java m3\nlocation3.java m2\n");

  fs::path recs = dir / "recs";
  REQUIRE(run("recommend --pattern " + pattern.string() + " --codebase " + fixtures() +
              "/corpus/loop_rewrite --out " + recs.string())
              .exit_code == 0);
  fs::path report = dir / "report.json";
  RunResult ev = run("evaluate --recs " + recs.string() + " --truth " + fixtures() +
                     "/truth/loop_rewrite --report " + report.string());
  CHECK(ev.exit_code == 0);
  std::string rep = slurp(report);
  CHECK(rep.find("\"m\": 4") != std::string::npos);
  CHECK(rep.find("\"correct\": 3") != std::string::npos);
}

TEST_CASE("ARESD_PARALLELISM does not change artifacts") {
  fs::path dir = fresh_dir("aresd_cli_par");
  fs::path pattern = dir / "p.ares";
  REQUIRE(run("learn --examples " + fixtures() + "/groups/loop_rewrite --out " + pattern.string())
              .exit_code == 0);
  RunResult seq = run("search --pattern " + pattern.string() + " --codebase " + fixtures() +
                      "/corpus/loop_rewrite");
  std::string cmd = "ARESD_PARALLELISM=4 " + std::string(ARESD_BIN) + " search --pattern " +
                    pattern.string() + " --codebase " + fixtures() + "/corpus/loop_rewrite 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::ostringstream out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.write(buf, static_cast<long>(n));
  pclose(pipe);
  CHECK(out.str() == seq.output);
}

TEST_CASE("learn honors --max-examples") {
  fs::path dir = fresh_dir("aresd_cli_max");
  fs::path p2 = dir / "two.ares";
  fs::path p3 = dir / "three.ares";
  REQUIRE(run("learn --examples " + fixtures() + "/groups/accumulate --max-examples 2 --out " +
              p2.string())
              .exit_code == 0);
  REQUIRE(run("learn --examples " + fixtures() + "/groups/accumulate --out " + p3.string())
              .exit_code == 0);
  // the third example adds a third choice case
  CHECK(slurp(p2).find("publish") == std::string::npos);
  CHECK(slurp(p3).find("publish") != std::string::npos);
}

TEST_CASE("pipeline on the introductory example emits exactly the accurate recommendation") {
  fs::path out = fresh_dir("aresd_cli_fig1");
  RunResult r = run("pipeline --examples " + fixtures() + "/groups/move_guard --codebase " + fixtures() +
                    "/corpus/move_guard --out " + out.string());
  REQUIRE(r.exit_code == 0);
  std::string report = slurp(out / "report.json");
  CHECK(report.find("\"recommendations\": 1") != std::string::npos);
  CHECK(slurp(out / "recs/location.java/m2/variant-1.java") ==
        slurp(fixtures() + "/golden/move_guard_expected.java"));
  CHECK_FALSE(fs::exists(out / "recs/location.java/m2/variant-2.java"));
}
