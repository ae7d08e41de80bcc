/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Command-line front end. Talks to the engine exclusively through the C API.
 */
#include "gbdt_dirac.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

int report_error(const char* what, gd_status rc) {
  std::cerr << what << ": " << gd_status_name(rc) << ": " << gd_last_error_message()
            << "\n";
  return 2;
}

struct ScenarioHandle {
  gd_scenario* sc = nullptr;
  ~ScenarioHandle() { gd_scenario_free(sc); }
};

int load_scenario(const std::string& path, ScenarioHandle& h) {
  const gd_status rc = gd_scenario_from_file(path.c_str(), &h.sc);
  if (rc != GD_OK) return report_error("failed to load scenario", rc);
  return 0;
}

int run_into(const gd_scenario* sc, const std::string& out_dir, bool print_failures) {
  uint32_t failures = 0;
  const gd_status rc = gd_scenario_run(sc, out_dir.c_str(), &failures);
  if (rc != GD_OK) return report_error("run failed", rc);
  std::cout << "artifacts written to " << out_dir << "\n";
  if (print_failures && failures > 0) {
    std::cout << failures << " verification check(s) failed (see verify.txt)\n";
    return 1;
  }
  return 0;
}

bool parse_z(const std::string& s, double& re, double& im) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return false;
  try {
    re = std::stod(s.substr(0, comma));
    im = std::stod(s.substr(comma + 1));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"gbdt-dirac: explicit Dirac-system engine"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = "out", example_name;
  std::vector<std::string> z_args;

  auto* run = app.add_subcommand("run", "run a scenario file and emit its artifacts");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("-o,--out", out_dir, "output directory");

  auto* example = app.add_subcommand("example", "run a canned example scenario");
  example->add_option("name", example_name, "ee-dw0 | ee-dw1 | trivial-sa | trivial-ssa")
      ->required();
  example->add_option("-o,--out", out_dir, "output directory");

  auto* verify = app.add_subcommand("verify", "run the verification battery only");
  verify->add_option("scenario", scenario_path, "scenario JSON file")->required();

  auto* weyl = app.add_subcommand("weyl", "evaluate the Weyl function on given z points");
  weyl->add_option("scenario", scenario_path, "scenario JSON file")->required();
  weyl->add_option("--z", z_args, "spectral point as re,im (repeatable)")->required();
  weyl->add_option("-o,--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    ScenarioHandle h;
    if (int rc = load_scenario(scenario_path, h)) return rc;
    return run_into(h.sc, out_dir, true);
  }

  if (example->parsed()) {
    ScenarioHandle h;
    const gd_status rc = gd_scenario_example(example_name.c_str(), &h.sc);
    if (rc != GD_OK) return report_error("example failed", rc);

    // Persist the materialized scenario next to its artifacts.
    size_t needed = 0;
    gd_scenario_to_json(h.sc, nullptr, 0, &needed);
    std::string text(needed, '\0');
    if (gd_scenario_to_json(h.sc, text.data(), text.size(), nullptr) == GD_OK) {
      text.resize(needed - 1);
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      std::ofstream out(out_dir + "/scenario.json", std::ios::binary);
      out << text;
    }
    return run_into(h.sc, out_dir, true);
  }

  if (verify->parsed()) {
    ScenarioHandle h;
    if (int rc = load_scenario(scenario_path, h)) return rc;

    gd_triple* t = nullptr;
    gd_status rc = gd_triple_create(h.sc, &t);
    if (rc != GD_OK) return report_error("triple construction failed", rc);

    size_t needed = 0;
    uint32_t failures = 0;
    rc = gd_triple_verify(t, nullptr, 0, &needed, nullptr);
    if (rc != GD_OK) {
      gd_triple_free(t);
      return report_error("verification failed to run", rc);
    }
    std::string text(needed, '\0');
    rc = gd_triple_verify(t, text.data(), text.size(), nullptr, &failures);
    gd_triple_free(t);
    if (rc != GD_OK) return report_error("verification failed to run", rc);
    text.resize(needed - 1);
    std::cout << text;
    if (failures > 0) {
      std::cout << failures << " verification check(s) failed\n";
      return 1;
    }
    return 0;
  }

  if (weyl->parsed()) {
    ScenarioHandle h;
    if (int rc = load_scenario(scenario_path, h)) return rc;
    std::vector<double> re, im;
    for (const auto& s : z_args) {
      double r = 0, i = 0;
      if (!parse_z(s, r, i)) {
        std::cerr << "bad --z value '" << s << "', expected re,im\n";
        return 2;
      }
      re.push_back(r);
      im.push_back(i);
    }
    const gd_status rc =
        gd_scenario_weyl_table(h.sc, re.data(), im.data(), re.size(), out_dir.c_str());
    if (rc != GD_OK) return report_error("weyl evaluation failed", rc);
    std::cout << "weyl table written to " << out_dir << "/weyl.csv\n";
    return 0;
  }

  return 2;
}
