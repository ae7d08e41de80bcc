/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GBDT_SCENARIO_HPP
#define GBDT_SCENARIO_HPP

#include "gbdt/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gbdt {

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  std::vector<double> points() const { return linspace(min, max, count); }
};

/// One self-contained problem description: seed parameters, the generalized
/// matrix eigenvalue (dense or Jordan form), block vectors, optional S(0),
/// evaluation grids and the requested artifact list. Serializes to JSON with
/// complex numbers as [re, im] pairs and matrices as row-major arrays of rows.
struct Scenario {
  std::string name;
  SystemKind kind;
  Complex a{1.0, 0.0};
  double c = 0.0;
  std::optional<CMatrix> matrix_a; // dense A
  std::optional<JordanSpec> jordan_a;
  RootBranch branch = RootBranch::Principal; // dense-path root branch
  CMatrix f1, f2;                            // n x p
  std::optional<CMatrix> s0;
  GridSpec x_grid{-2.0, 2.0, 101};
  GridSpec xi_grid{-1.0, 1.0, 21};
  std::vector<Complex> z_list;
  std::vector<std::string> outputs; // potential, weyl, dynamical, verify

  static Scenario from_json_text(const std::string& text);
  static Scenario from_file(const std::string& path);
  std::string to_json_text() const;

  bool wants(const std::string& artifact) const;
};

bool operator==(const Scenario& lhs, const Scenario& rhs);

/// Builds and validates the triple described by a scenario.
GbdtTriple scenario_triple(const Scenario& sc);

/// The canned scenarios: ee-dw0, ee-dw1, trivial-sa, trivial-ssa.
/// ee-dw1 verifies S(0) > 0 before returning and refuses otherwise.
Scenario example_scenario(const std::string& name);

std::vector<std::string> example_names();

struct RunResult {
  std::vector<std::string> files;
  int verify_failures = 0;
};

/// Emits the requested CSV artifacts and the verification report into out_dir.
RunResult run_scenario(const Scenario& sc, const std::string& out_dir);

/// Weyl table only, for an explicit z list (CLI `weyl` command).
RunResult run_weyl_table(const Scenario& sc, const std::vector<Complex>& zs,
                         const std::string& out_dir);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

} // namespace gbdt

#endif
