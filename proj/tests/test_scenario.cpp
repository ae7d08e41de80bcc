/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "gbdt/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gbdt;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("gbdt_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (csv.columns.empty()) {
      csv.columns = cells;
    } else {
      std::vector<double> row;
      for (const auto& c : cells) row.push_back(std::stod(c));
      csv.rows.push_back(std::move(row));
    }
  }
  return csv;
}

size_t column_index(const Csv& csv, const std::string& name) {
  for (size_t i = 0; i < csv.columns.size(); ++i)
    if (csv.columns[i] == name) return i;
  FAIL("missing column ", name);
  return 0;
}

} // namespace

TEST_CASE("scenarios round-trip losslessly through JSON") {
  for (const std::string& name : example_names()) {
    const Scenario sc = example_scenario(name);
    const Scenario back = Scenario::from_json_text(sc.to_json_text());
    CHECK(back == sc);
    // Serialization is canonical: a second round produces identical bytes.
    CHECK(back.to_json_text() == sc.to_json_text());
  }
}

TEST_CASE("parse errors carry the offending field") {
  auto expect_parse_error = [](const std::string& text, const std::string& needle) {
    try {
      (void)Scenario::from_json_text(text);
      FAIL("expected a parse error for ", needle);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse_error("{", "not valid JSON");
  expect_parse_error(R"({"kind":"elliptic","a":[1,0],"c":0})", "kind");

  Scenario sc = example_scenario("ee-dw1");
  // f1 of the wrong height (n = 2 here).
  std::string text = sc.to_json_text();
  const std::string f1 = R"("f1": [
    [
      [
        1.0,
        0.0
      ]
    ]
  ])";
  const auto at = text.find("\"f1\"");
  REQUIRE(at != std::string::npos);
  const auto end = text.find("\"f2\"");
  text = text.substr(0, at) + f1 + ",\n  " + text.substr(end);
  expect_parse_error(text, "f1");
}

TEST_CASE("a scenario needs exactly one of matrix_a and jordan_a") {
  const std::string both = R"({
    "kind": "self_adjoint", "a": [1,0], "c": 0,
    "matrix_a": [[[3,0]]],
    "jordan_a": {"blocks": [{"eigenvalue": [3,0], "size": 1}]},
    "f1": [[[0,0]]], "f2": [[[0,0]]],
    "grids": {"x": {"min":0,"max":1,"count":3}, "xi": {"min":0,"max":1,"count":3}},
    "outputs": ["potential"]
  })";
  CHECK_THROWS_AS((void)Scenario::from_json_text(both), Error);
}

TEST_CASE("unknown example names are rejected") {
  try {
    (void)example_scenario("ee-dw7");
    FAIL("expected an unknown-name error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownName);
  }
}

TEST_CASE("the steplike example emits omega(0) = -11/5 in the potential profile") {
  TempDir dir("dw0");
  Scenario sc = example_scenario("ee-dw0");
  sc.outputs = {"potential"};
  const RunResult r = run_scenario(sc, dir.path.string());
  REQUIRE(r.files.size() == 1);
  const Csv csv = parse_csv(slurp(r.files[0]));
  const size_t xcol = column_index(csv, "x");
  const size_t wcol = column_index(csv, "omega");
  bool found = false;
  for (const auto& row : csv.rows) {
    if (row[xcol] == 0.0) {
      CHECK(std::abs(row[wcol] - (-2.2)) < 1e-12);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("a trivial scenario reproduces the seed potential samples") {
  TempDir dir("triv");
  Scenario sc = example_scenario("trivial-sa");
  sc.outputs = {"potential"};
  const RunResult r = run_scenario(sc, dir.path.string());
  const Csv csv = parse_csv(slurp(r.files[0]));
  const size_t xcol = column_index(csv, "x");
  const size_t re = column_index(csv, "re_v_0_0");
  const size_t im = column_index(csv, "im_v_0_0");
  // No omega column: the realness hypotheses do not apply to this kind.
  for (const auto& c : csv.columns) CHECK(c != "omega");
  const SeedPotential seed(sc.a, sc.c, 1);
  for (const auto& row : csv.rows) {
    const Complex want = seed.scalar_value(row[xcol]);
    CHECK(std::abs(Complex(row[re], row[im]) - want) < 1e-14);
  }
}

TEST_CASE("the growth example's s22 column matches its closed form") {
  TempDir dir("dw1");
  Scenario sc = example_scenario("ee-dw1");
  sc.outputs = {"potential"};
  const RunResult r = run_scenario(sc, dir.path.string());
  const Csv csv = parse_csv(slurp(r.files[0]));
  const size_t xcol = column_index(csv, "x");
  const size_t scol = column_index(csv, "re_s_1_1");
  REQUIRE(!csv.rows.empty());
  for (const auto& row : csv.rows) {
    const double want = fixtures::growth_s22({}, row[xcol]);
    CHECK(std::abs(row[scol] - want) <= 1e-8 * std::abs(want));
  }
}

TEST_CASE("weyl tables carry the modulus-1 property for the trivial SA example") {
  TempDir dir("weyl");
  Scenario sc = example_scenario("trivial-sa");
  sc.outputs = {"weyl"};
  const RunResult r = run_scenario(sc, dir.path.string());
  const Csv csv = parse_csv(slurp(r.files[0]));
  const size_t re = column_index(csv, "re_phi_0_0");
  const size_t im = column_index(csv, "im_phi_0_0");
  const size_t mem = column_index(csv, "membership");
  REQUIRE(csv.rows.size() == 10);
  for (const auto& row : csv.rows) {
    CHECK(std::abs(std::hypot(row[re], row[im]) - 1.0) < 1e-12);
    CHECK(row[mem] > 0.0);
    CHECK(std::isfinite(row[mem]));
  }
}

TEST_CASE("run_weyl_table writes a table for explicit z points") {
  TempDir dir("weylz");
  const Scenario sc = example_scenario("ee-dw0");
  const RunResult r =
      run_weyl_table(sc, {Complex(0.0, 5.0), Complex(1.0, 7.0)}, dir.path.string());
  const Csv csv = parse_csv(slurp(r.files[0]));
  REQUIRE(csv.rows.size() == 2);
  CHECK(csv.rows[0][column_index(csv, "im_z")] == 5.0);
}

TEST_CASE("scenario runs are byte-deterministic") {
  for (const std::string& name : {"ee-dw0", "trivial-ssa"}) {
    TempDir d1(name + "_run1"), d2(name + "_run2");
    const Scenario sc = example_scenario(name);
    const RunResult r1 = run_scenario(sc, d1.path.string());
    const RunResult r2 = run_scenario(sc, d2.path.string());
    REQUIRE(r1.files.size() == r2.files.size());
    for (size_t i = 0; i < r1.files.size(); ++i)
      CHECK(slurp(r1.files[i]) == slurp(r2.files[i]));
  }
}

TEST_CASE("verification failures are counted in the run result") {
  TempDir dir("vfail");
  Scenario sc = example_scenario("trivial-ssa");
  sc.outputs = {"verify"};
  // Corrupt S0: the identity check must fail and be counted.
  (*sc.s0)(0, 0) = 2.0; // A S0 - S0 A* stays 0 for real A; identity still 0=0
  sc.f1(0, 0) = 0.0;
  const RunResult ok = run_scenario(sc, dir.path.string());
  CHECK(ok.verify_failures == 0);

  Scenario bad = example_scenario("ee-dw0");
  bad.outputs = {"verify"};
  bad.s0 = CMatrix::Identity(1, 1) * 5.001; // violates the identity at x=0
  CHECK_THROWS_AS((void)run_scenario(bad, dir.path.string()), Error);
}

TEST_CASE("CSV schemas are frozen") {
  TempDir dir("schema");
  const Scenario sc = example_scenario("ee-dw0");
  const RunResult r = run_scenario(sc, dir.path.string());
  REQUIRE(r.files.size() == 4);

  const Csv pot = parse_csv(slurp(dir.path / "potential.csv"));
  const std::vector<std::string> pot_cols = {
      "x",       "re_v_0_0", "im_v_0_0", "omega", "min_eig_s",
      "re_s_0_0", "im_s_0_0"};
  CHECK(pot.columns == pot_cols);

  const Csv weyl = parse_csv(slurp(dir.path / "weyl.csv"));
  const std::vector<std::string> weyl_cols = {"re_z", "im_z", "re_phi_0_0", "im_phi_0_0",
                                              "membership"};
  CHECK(weyl.columns == weyl_cols);

  const Csv dyn = parse_csv(slurp(dir.path / "dynamical.csv"));
  const std::vector<std::string> dyn_cols = {"x", "xi", "abs_psi_0_0", "abs_psi_1_0"};
  CHECK(dyn.columns == dyn_cols);

  // Comment headers carry the scenario parameters.
  const std::string text = slurp(dir.path / "potential.csv");
  CHECK(text.rfind("# gbdt-dirac potential profile; scenario=ee-dw0", 0) == 0);
}

TEST_CASE("format_double emits shortest round-trip decimals") {
  CHECK(format_double(0.05) == "0.05");
  CHECK(format_double(-2.2) == "-2.2");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
