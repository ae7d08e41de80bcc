/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbdt_dirac.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("gbdt_capi_" + tag);
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

struct Scenario {
  gd_scenario* sc = nullptr;
  ~Scenario() { gd_scenario_free(sc); }
};

struct Triple {
  gd_triple* t = nullptr;
  ~Triple() { gd_triple_free(t); }
};

} // namespace

TEST_CASE("version and status names are stable strings") {
  CHECK(std::string(gd_version()) == "0.1.0");
  CHECK(std::string(gd_status_name(GD_OK)) == "ok");
  CHECK(std::string(gd_status_name(GD_ERR_POLE)) == "pole");
}

TEST_CASE("examples materialize, serialize and reload through the C surface") {
  Scenario h;
  REQUIRE(gd_scenario_example("ee-dw0", &h.sc) == GD_OK);

  size_t needed = 0;
  REQUIRE(gd_scenario_to_json(h.sc, nullptr, 0, &needed) == GD_OK);
  REQUIRE(needed > 2);
  std::vector<char> buf(needed);
  REQUIRE(gd_scenario_to_json(h.sc, buf.data(), buf.size(), nullptr) == GD_OK);

  // Too-small buffers are reported, not truncated.
  CHECK(gd_scenario_to_json(h.sc, buf.data(), 4, nullptr) == GD_ERR_BUFFER_TOO_SMALL);

  Scenario back;
  REQUIRE(gd_scenario_from_string(buf.data(), &back.sc) == GD_OK);
  size_t needed2 = 0;
  REQUIRE(gd_scenario_to_json(back.sc, nullptr, 0, &needed2) == GD_OK);
  CHECK(needed2 == needed);
}

TEST_CASE("unknown example names map to GD_ERR_UNKNOWN_NAME") {
  gd_scenario* sc = nullptr;
  CHECK(gd_scenario_example("nope", &sc) == GD_ERR_UNKNOWN_NAME);
  CHECK(std::string(gd_last_error_message()).find("nope") != std::string::npos);
  CHECK(sc == nullptr);
}

TEST_CASE("parse failures map to GD_ERR_PARSE with a message") {
  gd_scenario* sc = nullptr;
  CHECK(gd_scenario_from_string("{not json", &sc) == GD_ERR_PARSE);
  CHECK(std::strlen(gd_last_error_message()) > 0);
}

TEST_CASE("scenario runs produce the requested artifacts") {
  TempDir dir("run");
  Scenario h;
  REQUIRE(gd_scenario_example("ee-dw0", &h.sc) == GD_OK);
  uint32_t failures = 99;
  REQUIRE(gd_scenario_run(h.sc, dir.path.string().c_str(), &failures) == GD_OK);
  CHECK(failures == 0);
  for (const char* f : {"potential.csv", "weyl.csv", "dynamical.csv", "verify.txt"})
    CHECK(fs::exists(dir.path / f));
  const std::string verify = slurp(dir.path / "verify.txt");
  CHECK(verify.find(",pass,") != std::string::npos);
  CHECK(verify.find(",fail,") == std::string::npos);
}

TEST_CASE("triples expose dimensions and evaluations") {
  Scenario h;
  REQUIRE(gd_scenario_example("ee-dw0", &h.sc) == GD_OK);
  Triple t;
  REQUIRE(gd_triple_create(h.sc, &t.t) == GD_OK);

  int32_t n = 0, p = 0, kind = -1, pos = -1;
  REQUIRE(gd_triple_dims(t.t, &n, &p, &kind, &pos) == GD_OK);
  CHECK(n == 1);
  CHECK(p == 1);
  CHECK(kind == GD_KIND_SKEW_SELF_ADJOINT);
  CHECK(pos == 1);

  double omega = 0.0;
  REQUIRE(gd_triple_omega(t.t, 0.0, &omega) == GD_OK);
  CHECK(std::abs(omega - (-2.2)) < 1e-12);

  double vr = 0.0, vi = 0.0;
  REQUIRE(gd_triple_potential(t.t, 0.0, &vr, &vi) == GD_OK);
  CHECK(std::abs(vi - (-omega * -1.0)) < 1e-12); // omega = -i v => v = i omega
  CHECK(std::abs(vr) < 1e-12);

  double sr = 0.0, si = 0.0, me = 0.0;
  REQUIRE(gd_triple_s(t.t, 0.0, GD_S_AUTO, &sr, &si, &me) == GD_OK);
  CHECK(std::abs(sr - 5.0) < 1e-12);
  CHECK(std::abs(me - 5.0) < 1e-12);

  // Sylvester and quadrature agree here.
  double sr2 = 0.0, si2 = 0.0;
  REQUIRE(gd_triple_s(t.t, 0.7, GD_S_QUADRATURE, &sr2, &si2, nullptr) == GD_OK);
  REQUIRE(gd_triple_s(t.t, 0.7, GD_S_SYLVESTER, &sr, &si, nullptr) == GD_OK);
  CHECK(std::abs(sr - sr2) < 1e-8 * (1.0 + std::abs(sr)));
}

TEST_CASE("weyl evaluations agree across methods and flag poles") {
  Scenario h;
  REQUIRE(gd_scenario_example("ee-dw0", &h.sc) == GD_OK);
  Triple t;
  REQUIRE(gd_triple_create(h.sc, &t.t) == GD_OK);

  double yr = 0, yi = 0, rr = 0, ri = 0;
  REQUIRE(gd_triple_weyl(t.t, 0.5, 6.0, GD_WEYL_Y_QUOTIENT, &yr, &yi) == GD_OK);
  REQUIRE(gd_triple_weyl(t.t, 0.5, 6.0, GD_WEYL_REALIZATION, &rr, &ri) == GD_OK);
  CHECK(std::abs(std::complex<double>(yr - rr, yi - ri)) < 1e-9);

  double wr[4], wi[4];
  CHECK(gd_triple_transfer(t.t, 0.0, 0.0, 2.0, wr, wi) == GD_ERR_POLE);
  CHECK(gd_triple_transfer(t.t, 0.0, 0.0, 5.0, wr, wi) == GD_OK);
}

TEST_CASE("hypothesis violations surface as GD_ERR_HYPOTHESES") {
  Scenario h;
  REQUIRE(gd_scenario_example("trivial-ssa", &h.sc) == GD_OK);
  Triple t;
  REQUIRE(gd_triple_create(h.sc, &t.t) == GD_OK);
  double omega = 0.0;
  CHECK(gd_triple_omega(t.t, 0.0, &omega) == GD_ERR_HYPOTHESES);
  CHECK(std::string(gd_last_error_message()).find("i*A") != std::string::npos);
}

TEST_CASE("dynamical solutions cross the boundary row-major") {
  Scenario h;
  REQUIRE(gd_scenario_example("ee-dw1", &h.sc) == GD_OK);
  Triple t;
  REQUIRE(gd_triple_create(h.sc, &t.t) == GD_OK);
  int32_t n = 0, p = 0;
  REQUIRE(gd_triple_dims(t.t, &n, &p, nullptr, nullptr) == GD_OK);
  std::vector<double> re(static_cast<size_t>(2 * p) * n), im(re.size());
  REQUIRE(gd_triple_dynamical(t.t, 0.3, 0.2, re.data(), im.data()) == GD_OK);
  for (double v : re) CHECK(std::isfinite(v));
}

TEST_CASE("the verify battery reports through the two-call protocol") {
  Scenario h;
  REQUIRE(gd_scenario_example("trivial-sa", &h.sc) == GD_OK);
  Triple t;
  REQUIRE(gd_triple_create(h.sc, &t.t) == GD_OK);
  size_t needed = 0;
  REQUIRE(gd_triple_verify(t.t, nullptr, 0, &needed, nullptr) == GD_OK);
  REQUIRE(needed > 0);
  std::vector<char> buf(needed);
  uint32_t failures = 99;
  REQUIRE(gd_triple_verify(t.t, buf.data(), buf.size(), nullptr, &failures) == GD_OK);
  CHECK(failures == 0);
  const std::string text(buf.data());
  CHECK(text.find("identity,") != std::string::npos);
  CHECK(text.find("oracle_transformed,") != std::string::npos);
}

TEST_CASE("weyl tables for explicit z lists") {
  TempDir dir("weyl");
  Scenario h;
  REQUIRE(gd_scenario_example("trivial-sa", &h.sc) == GD_OK);
  const double zr[2] = {0.0, 0.0}, zi[2] = {2.0, 3.0};
  REQUIRE(gd_scenario_weyl_table(h.sc, zr, zi, 2, dir.path.string().c_str()) == GD_OK);
  const std::string text = slurp(dir.path / "weyl.csv");
  CHECK(text.find("re_phi_0_0") != std::string::npos);
}

TEST_CASE("null arguments are rejected up front") {
  CHECK(gd_scenario_example(nullptr, nullptr) == GD_ERR_INVALID_ARGUMENT);
  CHECK(gd_triple_dims(nullptr, nullptr, nullptr, nullptr, nullptr) ==
        GD_ERR_INVALID_ARGUMENT);
  gd_scenario* sc = nullptr;
  CHECK(gd_scenario_from_file("/nonexistent/path.json", &sc) == GD_ERR_IO);
}
