#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "elocc/error.hpp"
#include "elocc/report.hpp"

using namespace elocc;

namespace fs = std::filesystem;

TEST_SUITE("report") {

TEST_CASE("number formatting") {
  CHECK(format_real(0.97) == "0.97");
  CHECK(format_real(1.0) == "1");
  CHECK(std::stod(format_real(0.1 + 0.2)) == 0.1 + 0.2);
  CHECK(format_fixed(0.61234, 4) == "0.6123");
  CHECK(format_fixed(5.4, 1) == "5.4");
}

TEST_CASE("table CSV layout") {
  InterceptionTable t({0.94, 0.95, 0.96});
  t.set(0, 1, {0.5123});
  t.set(1, 2, {0.31, 4.0});
  const std::string expected =
      "g,0.94,0.95,0.96\n"
      "0.94,N,0.5123,N\n"
      "0.95,0.5123,N,0.3100\n"
      "0.96,N,0.3100,N\n";
  CHECK(table_csv(t, "g") == expected);
  const std::string paper = table_csv(t, "g", TableFormat{true});
  CHECK(paper.find("0.94,N,0.6,N") != std::string::npos);
  CHECK(paper.find("0.95,0.6,N,0.4") != std::string::npos);

  const auto j = table_json(t, "g");
  CHECK(j["parameter"] == "g");
  CHECK(j["cells"][0][0].is_null());
  CHECK(j["crossings"][1][2].size() == 2);
}

TEST_CASE("bracket and scaling records") {
  BracketTrace trace;
  trace.levels = {{0.98, 1.0, 0.01}, {0.987, 0.989, 0.001}};
  trace.bracket = trace.levels.back();
  const auto j = bracket_json(trace);
  CHECK(j["lower"] == 0.987);
  CHECK(j["levels"].size() == 2);
  CHECK(bracket_csv(trace) == "lower,upper,step,midpoint\n0.98,1,0.01,0.99\n0.987,0.989,0.001,0.988\n");

  const std::vector<ScalingPoint> pts = {{4, 0.9}, {6, 0.95}, {8, 0.97}};
  const ScalingFit fit{-1.0, 2.0, 1.0, 0.001, false};
  CHECK(scaling_json(fit, pts)["points"].size() == 3);
  CHECK(scaling_csv(fit, pts).starts_with("n_sites,critical,fitted\n4,0.9,"));
}

TEST_CASE("atomic writes replace the target and leave no temp files") {
  const fs::path dir = fs::temp_directory_path() / "elocc_report_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path target = dir / "out.csv";
  write_atomic(target, "first\n");
  write_atomic(target, "second\n");
  std::ifstream in(target);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str() == "second\n");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 1);
  CHECK_THROWS_AS(write_atomic(dir / "missing" / "x.csv", "x"), Error);
  fs::remove_all(dir);
}

}  // TEST_SUITE
