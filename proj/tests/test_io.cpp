// File-format checks. Oracles: bitwise round trips through the 17-digit
// cells, hand-written JSON fixtures, and the curve/polygon round trip
// against the source metric.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cmflow/affine_bridge.hpp"
#include "cmflow/circle_field.hpp"
#include "cmflow/conformal_metric.hpp"
#include "cmflow/diagnostics.hpp"
#include "cmflow/flow_engine.hpp"
#include "cmflow/io.hpp"
#include "cmflow/presets.hpp"

using namespace cmflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "cmflow_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

double sup_diff(const CircleField& a, const CircleField& b) {
  double worst = 0.0;
  for (int j = 0; j < a.size(); ++j)
    worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

}  // namespace

TEST_CASE("field CSV carries the grid and survives strtod round trips") {
  fs::path p = scratch_dir() / "field.csv";
  CircleField f = CircleField::from_function(8, [](double t) {
    return 1.0 / 3.0 + std::cos(t) * 0.1;
  });
  write_field_csv(p, f);

  std::vector<std::string> lines = read_lines(p);
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == "theta,value");
  for (int j = 0; j < 8; ++j) {
    std::stringstream row(lines[j + 1]);
    std::string theta, value;
    REQUIRE(std::getline(row, theta, ','));
    REQUIRE(std::getline(row, value, ','));
    CHECK(std::strtod(theta.c_str(), nullptr) ==
          CircleField::grid_point(8, j));
    CHECK(std::strtod(value.c_str(), nullptr) == f[j]);
  }
}

TEST_CASE("field JSON round trip and validation") {
  fs::path p = scratch_dir() / "field.json";
  CircleField f = CircleField::from_function(16, [](double t) {
    return 2.0 + std::sin(3.0 * t);
  });
  write_field_json(p, f);
  CircleField back = read_field_json(p);
  REQUIRE(back.size() == 16);
  CHECK(sup_diff(back, f) == 0.0);

  fs::path bad = scratch_dir() / "bad_field.json";
  write_text(bad, "{\"n\": 8, \"samples\": [1,2,3]}");
  CHECK_THROWS_AS(read_field_json(bad), std::runtime_error);
  write_text(bad, "{\"n\": 8}");
  CHECK_THROWS_AS(read_field_json(bad), std::runtime_error);
  write_text(bad, "{\"n\": 8, \"samples\": [1,1,1,1,1,1,1,1], \"extra\": 0}");
  CHECK_THROWS_AS(read_field_json(bad), std::runtime_error);
  write_text(bad, "not json");
  CHECK_THROWS_AS(read_field_json(bad), std::runtime_error);
  CHECK_THROWS_AS(read_field_json(scratch_dir() / "absent.json"),
                  std::runtime_error);
}

TEST_CASE("metric JSON round trip is bitwise") {
  fs::path p = scratch_dir() / "metric.json";
  ConformalMetric m = perturbed_round(1.0, 32, 2, 0.17);
  write_metric_json(p, m);
  ConformalMetric back = read_metric_json(p);
  CHECK(back.alpha == m.alpha);
  REQUIRE(back.u.size() == m.u.size());
  CHECK(sup_diff(back.u, m.u) == 0.0);

  fs::path bad = scratch_dir() / "bad_metric.json";
  write_text(bad, "{\"alpha\": 4, \"n\": 8, \"u\": [1,1,1,1,1,1,1,-1]}");
  CHECK_THROWS_AS(read_metric_json(bad), std::runtime_error);
  write_text(bad, "{\"alpha\": 4, \"u\": [1,1,1,1,1,1,1,1]}");
  CHECK_THROWS_AS(read_metric_json(bad), std::runtime_error);
  write_text(bad,
             "{\"alpha\": 4, \"n\": 8, \"u\": [1,1,1,1,1,1,1,1], \"pad\": 1}");
  CHECK_THROWS_AS(read_metric_json(bad), std::runtime_error);
}

TEST_CASE("trajectory CSV: header, 17-digit cells, empty not-applicable") {
  StepperConfig cfg;
  RunResult yam = run(perturbed_round(4.0, 16, 2, 0.05), cfg, 0.02, 0.01);
  fs::path p = scratch_dir() / "yamabe.csv";
  write_trajectory_csv(p, yam.record);

  std::vector<std::string> lines = read_lines(p);
  REQUIRE(lines.size() == yam.record.size() + 1);
  CHECK(lines[0] ==
        "t,Rbar,L,F2,F4,umin,umax,area,kw_residual,harnack,a1,b1,a2,b2,a3,b3");

  // Yamabe rows leave the area cell (column 8 of 16) empty but keep the
  // Kazdan-Warner residual.
  std::stringstream row(lines[1]);
  std::vector<std::string> cells;
  std::string cellv;
  while (std::getline(row, cellv, ',')) cells.push_back(cellv);
  REQUIRE(cells.size() == 16);
  CHECK(cells[7].empty());
  CHECK(!cells[8].empty());
  CHECK(std::strtod(cells[1].c_str(), nullptr) == yam.record.rbar[0]);
  CHECK(std::strtod(cells[15].c_str(), nullptr) == yam.record.modes[0][5]);

  // Affine rows do the opposite.
  RunResult aff = run(perturbed_round(1.0, 16, 2, 0.05), cfg, 0.02, 0.01);
  fs::path q = scratch_dir() / "affine.csv";
  write_trajectory_csv(q, aff.record);
  std::stringstream arow(read_lines(q)[1]);
  cells.clear();
  while (std::getline(arow, cellv, ',')) cells.push_back(cellv);
  REQUIRE(cells.size() == 16);
  CHECK(!cells[7].empty());
  CHECK(cells[8].empty());
}

TEST_CASE("curve CSV and polygon reader round trip") {
  ConformalMetric m = perturbed_round(1.0, 256, 2, 0.08);
  CurveEmbedding emb = reconstruct_curve(m);
  fs::path p = scratch_dir() / "curve.csv";
  write_curve_csv(p, m, emb);

  std::vector<std::string> lines = read_lines(p);
  REQUIRE(lines.size() == 257);
  CHECK(lines[0] == "theta,x,y,h,k");

  // The header names the x,y columns, so the exported curve ingests as a
  // polygon directly; the round trip lands on the source metric.
  std::vector<std::array<double, 2>> poly = read_polygon_csv(p);
  REQUIRE(poly.size() == 256);
  CHECK(poly[0][0] == emb.points[0][0]);
  CHECK(poly[0][1] == emb.points[0][1]);
  ConformalMetric back = ingest_polygon(poly, 256);
  CHECK(sup_diff(back.u, m.u) <= 1e-3 * m.u.max());

  // Headerless two-column files read as plain x,y rows.
  fs::path plain = scratch_dir() / "plain.csv";
  write_text(plain, "1.0,0.0\n0.0,1.0\n-1.0,0.0\n0.0,-1.0\n");
  std::vector<std::array<double, 2>> square = read_polygon_csv(plain);
  REQUIRE(square.size() == 4);
  CHECK(square[3][1] == -1.0);

  fs::path bad = scratch_dir() / "bad_poly.csv";
  write_text(bad, "u,v\n1,2\n");
  CHECK_THROWS_AS(read_polygon_csv(bad), std::runtime_error);
  write_text(bad, "x,y\n");
  CHECK_THROWS_AS(read_polygon_csv(bad), std::runtime_error);
  write_text(bad, "1.0,2.0\n3.0\n");
  CHECK_THROWS_AS(read_polygon_csv(bad), std::runtime_error);
  write_text(bad, "1.0,2.0\nhello,3.0\n");
  CHECK_THROWS_AS(read_polygon_csv(bad), std::runtime_error);
}

TEST_CASE("report JSON shapes") {
  ConformalMetric m = round_state(1.0, 32);
  InequalityReport rep = theorem_a_report(m.u);
  fs::path p = scratch_dir() / "ineq.json";
  write_inequality_json(p, rep);
  std::ifstream in(p);
  nlohmann::json doc = nlohmann::json::parse(in);
  REQUIRE(doc.size() == 3);
  CHECK(doc["value"].get<double>() == rep.functional_value);
  CHECK(doc["bound"].get<double>() == rep.sharp_bound);
  CHECK(doc["deficit"].get<double>() == rep.deficit);

  DecayFit fit{6.0, 1.5, 2.0, 5.0, 0.999};
  fs::path q = scratch_dir() / "decay.json";
  write_decay_json(q, fit);
  std::ifstream din(q);
  nlohmann::json dd = nlohmann::json::parse(din);
  REQUIRE(dd.size() == 3);
  CHECK(dd["rate"].get<double>() == 6.0);
  REQUIRE(dd["window"].size() == 2);
  CHECK(dd["window"][1].get<double>() == 5.0);
  CHECK(dd["r2"].get<double>() == 0.999);
}
