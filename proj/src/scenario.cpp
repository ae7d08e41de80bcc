/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gbdt/scenario.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace gbdt {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  fail(ErrorCode::Parse, "scenario field '" + field + "': " + why);
}

Complex parse_complex(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_fail(field, "expected a complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix parse_matrix(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) parse_fail(field, "expected a non-empty array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  CMatrix m;
  for (size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.empty()) parse_fail(field, "row " + std::to_string(i) + " is not an array");
    if (i == 0) {
      cols = row.size();
      m.resize(rows, cols);
    } else if (row.size() != cols) {
      parse_fail(field, "ragged rows");
    }
    for (size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          parse_complex(row[k], field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

Json dump_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

Json dump_matrix(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(dump_complex(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RootBranch parse_branch(const Json& j, const std::string& field) {
  const std::string s = j.get<std::string>();
  if (s == "principal") return RootBranch::Principal;
  if (s == "negated") return RootBranch::Negated;
  parse_fail(field, "expected 'principal' or 'negated', got '" + s + "'");
}

GridSpec parse_grid(const Json& j, const std::string& field) {
  if (!j.is_object()) parse_fail(field, "expected an object {min, max, count}");
  GridSpec g;
  g.min = j.at("min").get<double>();
  g.max = j.at("max").get<double>();
  g.count = j.at("count").get<int>();
  if (g.count < 1) parse_fail(field, "count must be >= 1");
  return g;
}

const std::set<std::string> kKnownOutputs = {"potential", "weyl", "dynamical", "verify"};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

std::string complex_header(Complex z) {
  return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") +
         format_double(std::abs(z.imag())) + "i";
}

std::string scenario_header(const Scenario& sc, int n, const char* artifact) {
  std::ostringstream os;
  os << "# gbdt-dirac " << artifact << "; scenario=" << sc.name << "; kind="
     << (sc.kind.self_adjoint() ? "self_adjoint" : "skew_self_adjoint") << "; n=" << n
     << "; p=" << sc.kind.p << "; a=" << complex_header(sc.a) << "; c=" << format_double(sc.c)
     << "\n";
  return os.str();
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool Scenario::wants(const std::string& artifact) const {
  for (const auto& o : outputs)
    if (o == artifact) return true;
  return false;
}

Scenario Scenario::from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::Parse, std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::Parse, "scenario root must be an object");

  Scenario sc;
  try {
    sc.name = j.value("name", std::string("unnamed"));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "self_adjoint")
      sc.kind.kind = DiracKind::SelfAdjoint;
    else if (kind == "skew_self_adjoint")
      sc.kind.kind = DiracKind::SkewSelfAdjoint;
    else
      parse_fail("kind", "expected 'self_adjoint' or 'skew_self_adjoint'");
    sc.kind.p = j.value("p", 1);
    if (sc.kind.p < 1) parse_fail("p", "must be >= 1");
    sc.a = parse_complex(j.at("a"), "a");
    sc.c = j.at("c").get<double>();

    if (j.contains("matrix_a") == j.contains("jordan_a"))
      fail(ErrorCode::Parse, "scenario needs exactly one of 'matrix_a' or 'jordan_a'");
    if (j.contains("matrix_a")) sc.matrix_a = parse_matrix(j.at("matrix_a"), "matrix_a");
    if (j.contains("jordan_a")) {
      const Json& ja = j.at("jordan_a");
      JordanSpec spec;
      if (!ja.contains("blocks") || !ja.at("blocks").is_array() || ja.at("blocks").empty())
        parse_fail("jordan_a.blocks", "expected a non-empty array");
      for (size_t i = 0; i < ja.at("blocks").size(); ++i) {
        const Json& jb = ja.at("blocks")[i];
        JordanBlock b;
        b.eigenvalue = parse_complex(jb.at("eigenvalue"),
                                     "jordan_a.blocks[" + std::to_string(i) + "].eigenvalue");
        b.size = jb.value("size", 1);
        if (b.size < 1) parse_fail("jordan_a.blocks", "block size must be >= 1");
        if (jb.contains("branch"))
          b.branch = parse_branch(jb.at("branch"),
                                  "jordan_a.blocks[" + std::to_string(i) + "].branch");
        spec.blocks.push_back(b);
      }
      if (ja.contains("similarity"))
        spec.similarity = parse_matrix(ja.at("similarity"), "jordan_a.similarity");
      sc.jordan_a = std::move(spec);
    }
    if (j.contains("branch")) sc.branch = parse_branch(j.at("branch"), "branch");

    sc.f1 = parse_matrix(j.at("f1"), "f1");
    sc.f2 = parse_matrix(j.at("f2"), "f2");
    if (j.contains("s0")) sc.s0 = parse_matrix(j.at("s0"), "s0");

    const Json& grids = j.at("grids");
    sc.x_grid = parse_grid(grids.at("x"), "grids.x");
    sc.xi_grid = parse_grid(grids.at("xi"), "grids.xi");
    if (grids.contains("z")) {
      if (!grids.at("z").is_array()) parse_fail("grids.z", "expected an array");
      for (size_t i = 0; i < grids.at("z").size(); ++i)
        sc.z_list.push_back(parse_complex(grids.at("z")[i], "grids.z[" + std::to_string(i) + "]"));
    }

    if (!j.contains("outputs") || !j.at("outputs").is_array())
      parse_fail("outputs", "expected an array");
    for (const auto& o : j.at("outputs")) {
      const std::string s = o.get<std::string>();
      if (!kKnownOutputs.count(s)) parse_fail("outputs", "unknown artifact '" + s + "'");
      sc.outputs.push_back(s);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::Parse, std::string("scenario: ") + e.what());
  }

  // Dimension consistency.
  const int n = sc.matrix_a ? static_cast<int>(sc.matrix_a->rows()) : sc.jordan_a->dim();
  if (sc.matrix_a && sc.matrix_a->rows() != sc.matrix_a->cols())
    parse_fail("matrix_a", "must be square");
  if (sc.f1.rows() != n || sc.f1.cols() != sc.kind.p)
    parse_fail("f1", "expected " + std::to_string(n) + "x" + std::to_string(sc.kind.p));
  if (sc.f2.rows() != n || sc.f2.cols() != sc.kind.p)
    parse_fail("f2", "expected " + std::to_string(n) + "x" + std::to_string(sc.kind.p));
  if (sc.s0 && (sc.s0->rows() != n || sc.s0->cols() != n))
    parse_fail("s0", "expected " + std::to_string(n) + "x" + std::to_string(n));
  return sc;
}

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string Scenario::to_json_text() const {
  Json j;
  j["name"] = name;
  j["kind"] = kind.self_adjoint() ? "self_adjoint" : "skew_self_adjoint";
  j["p"] = kind.p;
  j["a"] = dump_complex(a);
  j["c"] = c;
  if (matrix_a) {
    j["matrix_a"] = dump_matrix(*matrix_a);
    j["branch"] = branch == RootBranch::Principal ? "principal" : "negated";
  }
  if (jordan_a) {
    Json ja;
    ja["blocks"] = Json::array();
    for (const auto& b : jordan_a->blocks) {
      Json jb;
      jb["eigenvalue"] = dump_complex(b.eigenvalue);
      jb["size"] = b.size;
      jb["branch"] = b.branch == RootBranch::Principal ? "principal" : "negated";
      ja["blocks"].push_back(std::move(jb));
    }
    if (jordan_a->similarity) ja["similarity"] = dump_matrix(*jordan_a->similarity);
    j["jordan_a"] = std::move(ja);
  }
  j["f1"] = dump_matrix(f1);
  j["f2"] = dump_matrix(f2);
  if (s0) j["s0"] = dump_matrix(*s0);
  j["grids"]["x"] = {{"min", x_grid.min}, {"max", x_grid.max}, {"count", x_grid.count}};
  j["grids"]["xi"] = {{"min", xi_grid.min}, {"max", xi_grid.max}, {"count", xi_grid.count}};
  Json zs = Json::array();
  for (Complex z : z_list) zs.push_back(dump_complex(z));
  j["grids"]["z"] = std::move(zs);
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

bool operator==(const Scenario& lhs, const Scenario& rhs) {
  auto mat_eq = [](const CMatrix& x, const CMatrix& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
  };
  auto opt_mat_eq = [&](const std::optional<CMatrix>& x, const std::optional<CMatrix>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || mat_eq(*x, *y);
  };
  if (lhs.name != rhs.name || lhs.kind.kind != rhs.kind.kind || lhs.kind.p != rhs.kind.p ||
      lhs.a != rhs.a || lhs.c != rhs.c || lhs.branch != rhs.branch)
    return false;
  if (!opt_mat_eq(lhs.matrix_a, rhs.matrix_a)) return false;
  if (lhs.jordan_a.has_value() != rhs.jordan_a.has_value()) return false;
  if (lhs.jordan_a) {
    const auto& a = *lhs.jordan_a;
    const auto& b = *rhs.jordan_a;
    if (a.blocks.size() != b.blocks.size()) return false;
    for (size_t i = 0; i < a.blocks.size(); ++i)
      if (a.blocks[i].eigenvalue != b.blocks[i].eigenvalue ||
          a.blocks[i].size != b.blocks[i].size || a.blocks[i].branch != b.blocks[i].branch)
        return false;
    if (!opt_mat_eq(a.similarity, b.similarity)) return false;
  }
  if (!mat_eq(lhs.f1, rhs.f1) || !mat_eq(lhs.f2, rhs.f2)) return false;
  if (!opt_mat_eq(lhs.s0, rhs.s0)) return false;
  auto grid_eq = [](const GridSpec& x, const GridSpec& y) {
    return x.min == y.min && x.max == y.max && x.count == y.count;
  };
  return grid_eq(lhs.x_grid, rhs.x_grid) && grid_eq(lhs.xi_grid, rhs.xi_grid) &&
         lhs.z_list == rhs.z_list && lhs.outputs == rhs.outputs;
}

GbdtTriple scenario_triple(const Scenario& sc) {
  const SeedPotential seed(sc.a, sc.c, sc.kind.p);
  if (sc.jordan_a)
    return assemble_triple_jordan(*sc.jordan_a, sc.f1, sc.f2, seed, sc.kind, sc.s0);
  const CMatrix q = build_q_generic(*sc.matrix_a, seed, sc.kind, sc.branch);
  return assemble_triple(*sc.matrix_a, q, sc.f1, sc.f2, seed, sc.kind, sc.s0);
}

std::vector<std::string> example_names() {
  return {"ee-dw0", "ee-dw1", "trivial-sa", "trivial-ssa"};
}

namespace {

std::vector<Complex> upper_grid(double im) {
  std::vector<Complex> zs;
  for (double re : linspace(-5.0, 5.0, 10)) zs.emplace_back(re, im);
  return zs;
}

CMatrix scalar_matrix(Complex v) {
  CMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

} // namespace

Scenario example_scenario(const std::string& name) {
  Scenario sc;
  sc.name = name;
  sc.outputs = {"potential", "weyl", "dynamical", "verify"};
  if (name == "ee-dw0") {
    // Steplike family, defaults r=1, lambda=2, d=1, mu=+sqrt(3).
    sc.kind = skew_self_adjoint(1);
    sc.a = Complex(0.0, 1.0);
    sc.c = 0.0;
    JordanSpec spec;
    spec.blocks.push_back({Complex(0.0, 2.0), 1, RootBranch::Principal});
    sc.jordan_a = std::move(spec);
    sc.f1 = scalar_matrix(Complex(1.0, 0.0));
    sc.f2 = scalar_matrix(Complex(1.0, 0.0));
    sc.x_grid = GridSpec{-8.0, 8.0, 321};
    sc.xi_grid = GridSpec{-1.0, 1.0, 21};
    sc.z_list = upper_grid(6.0);
  } else if (name == "ee-dw1") {
    // Quadratic-growth family, defaults r=1, lambda=2, b=1, d=1, mu=+sqrt(3).
    sc.kind = skew_self_adjoint(1);
    sc.a = Complex(0.0, 1.0);
    sc.c = 0.0;
    JordanSpec spec;
    spec.blocks.push_back({Complex(0.0, 2.0), 2, RootBranch::Principal});
    CMatrix e(2, 2);
    e << Complex(0.0, 1.0), 0.0, 0.0, 1.0;
    spec.similarity = e;
    sc.jordan_a = std::move(spec);
    sc.f1 = CMatrix::Zero(2, 1);
    sc.f1(0, 0) = 1.0;
    sc.f2 = CMatrix::Zero(2, 1);
    sc.f2(1, 0) = 1.0;
    sc.x_grid = GridSpec{-2.0, 2.0, 101};
    sc.xi_grid = GridSpec{-1.0, 1.0, 21};
    sc.z_list = upper_grid(6.0);
  } else if (name == "trivial-sa") {
    sc.kind = self_adjoint(1);
    sc.a = Complex(1.0, 0.0);
    sc.c = 0.0;
    sc.matrix_a = scalar_matrix(Complex(3.0, 0.0));
    sc.f1 = CMatrix::Zero(1, 1);
    sc.f2 = CMatrix::Zero(1, 1);
    sc.s0 = scalar_matrix(Complex(1.0, 0.0));
    sc.x_grid = GridSpec{0.0, 2.0, 101};
    sc.xi_grid = GridSpec{-1.0, 1.0, 21};
    for (int k = 1; k <= 10; ++k) sc.z_list.emplace_back(0.0, static_cast<double>(k));
  } else if (name == "trivial-ssa") {
    sc.kind = skew_self_adjoint(1);
    sc.a = Complex(0.0, 1.0);
    sc.c = 0.0;
    sc.matrix_a = scalar_matrix(Complex(2.0, 0.0));
    sc.f1 = CMatrix::Zero(1, 1);
    sc.f2 = CMatrix::Zero(1, 1);
    sc.s0 = scalar_matrix(Complex(1.0, 0.0));
    sc.x_grid = GridSpec{-2.0, 2.0, 101};
    sc.xi_grid = GridSpec{-1.0, 1.0, 21};
    sc.z_list = upper_grid(6.0);
  } else {
    fail(ErrorCode::UnknownName,
         "unknown example '" + name + "' (known: ee-dw0, ee-dw1, trivial-sa, trivial-ssa)");
  }
  if (name == "ee-dw1") {
    const GbdtTriple t = scenario_triple(sc);
    if (!t.s0_positive())
      fail(ErrorCode::InvalidArgument,
           "example ee-dw1: S(0) is not positive definite (min eigenvalue " +
               format_double(t.s0_min_eig) + "); refusing to run");
  }
  return sc;
}

namespace {

std::string potential_csv(const Scenario& sc, const GbdtTriple& triple) {
  const int p = triple.p(), n = triple.n();
  const bool with_omega = dirac_weyl_hypothesis_violation(triple).empty();
  std::ostringstream os;
  os << scenario_header(sc, n, "potential profile");
  os << "x";
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k) os << ",re_v_" << i << "_" << k;
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k) os << ",im_v_" << i << "_" << k;
  if (with_omega) os << ",omega";
  os << ",min_eig_s";
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) os << ",re_s_" << i << "_" << k;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) os << ",im_s_" << i << "_" << k;
  os << "\n";

  for (double x : sc.x_grid.points()) {
    const GbdtState st = eval_state(triple, x);
    const CMatrix v = eval_potential_block(triple, st);
    os << format_double(x);
    for (int i = 0; i < p; ++i)
      for (int k = 0; k < p; ++k) os << "," << format_double(v(i, k).real());
    for (int i = 0; i < p; ++i)
      for (int k = 0; k < p; ++k) os << "," << format_double(v(i, k).imag());
    if (with_omega) {
      const Complex omega = Complex(0.0, -1.0) * v(0, 0);
      if (std::abs(omega.imag()) > 1e-11 * (1.0 + std::abs(omega)))
        fail(ErrorCode::Inconsistency,
             "potential profile: omega has imaginary residue at x = " + format_double(x));
      os << "," << format_double(omega.real());
    }
    os << "," << format_double(st.s_solver.min_eigenvalue());
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) os << "," << format_double(st.s(i, k).real());
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) os << "," << format_double(st.s(i, k).imag());
    os << "\n";
  }
  return os.str();
}

std::string weyl_csv(const Scenario& sc, const GbdtTriple& triple,
                     const std::vector<Complex>& zs) {
  const int p = triple.p();
  std::ostringstream os;
  os << scenario_header(sc, triple.n(), "weyl table");
  os << "re_z,im_z";
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k) os << ",re_phi_" << i << "_" << k;
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k) os << ",im_phi_" << i << "_" << k;
  os << ",membership\n";

  const double cap = (kMatExpNormCap - 10.0) /
                     std::max(1.0, triple.realization.q_norm + std::abs(sc.c));
  const double xm = std::min(20.0, cap);
  for (Complex z : zs) {
    const WeylValue w = weyl_via_y(triple, z);
    const double membership = membership_partials(triple, z, xm).back().second;
    os << format_double(z.real()) << "," << format_double(z.imag());
    for (int i = 0; i < p; ++i)
      for (int k = 0; k < p; ++k) os << "," << format_double(w.phi(i, k).real());
    for (int i = 0; i < p; ++i)
      for (int k = 0; k < p; ++k) os << "," << format_double(w.phi(i, k).imag());
    os << "," << format_double(membership) << "\n";
  }
  return os.str();
}

std::string dynamical_csv(const Scenario& sc, const GbdtTriple& triple) {
  const int p = triple.p(), n = triple.n();
  std::ostringstream os;
  os << scenario_header(sc, n, "dynamical field");
  os << "x,xi";
  for (int i = 0; i < 2 * p; ++i)
    for (int k = 0; k < n; ++k) os << ",abs_psi_" << i << "_" << k;
  os << "\n";
  for (double x : sc.x_grid.points()) {
    const GbdtState st = eval_state(triple, x);
    for (double xi : sc.xi_grid.points()) {
      const CMatrix psi = dynamical_solution(triple, st, xi);
      os << format_double(x) << "," << format_double(xi);
      for (int i = 0; i < 2 * p; ++i)
        for (int k = 0; k < n; ++k) os << "," << format_double(std::abs(psi(i, k)));
      os << "\n";
    }
  }
  return os.str();
}

std::vector<double> thin_grid(const std::vector<double>& xs, size_t target) {
  if (xs.size() <= target) return xs;
  std::vector<double> out;
  out.reserve(target);
  for (size_t i = 0; i < target; ++i)
    out.push_back(xs[(i * (xs.size() - 1)) / (target - 1)]);
  return out;
}

} // namespace

RunResult run_scenario(const Scenario& sc, const std::string& out_dir) {
  const GbdtTriple triple = scenario_triple(sc);
  std::filesystem::create_directories(out_dir);
  RunResult result;

  auto emit = [&](const std::string& file, const std::string& content) {
    const std::string path = (std::filesystem::path(out_dir) / file).string();
    write_text_file(path, content);
    result.files.push_back(path);
  };

  if (sc.wants("potential")) emit("potential.csv", potential_csv(sc, triple));
  if (sc.wants("weyl")) emit("weyl.csv", weyl_csv(sc, triple, sc.z_list));
  if (sc.wants("dynamical")) emit("dynamical.csv", dynamical_csv(sc, triple));
  if (sc.wants("verify")) {
    const std::vector<double> xs = sc.x_grid.points();
    const std::vector<double> xs20 = thin_grid(xs, 20);
    std::vector<double> xis20 = thin_grid(sc.xi_grid.points(), 20);
    std::vector<VerifyReport> reports;
    // Grid-heavy checks run on a thinned grid; the identity check keeps the
    // full one.
    reports.push_back(check_identity(triple, xs));
    reports.push_back(check_positivity(triple, xs20));
    if (!triple.kind().self_adjoint()) reports.push_back(check_monitors(triple, xs20));
    reports.push_back(check_dual_ode(triple, xs20));
    reports.push_back(check_pispluss(triple, xs20));
    reports.push_back(check_pde(triple, xs20, xis20));
    const Complex z = sc.z_list.empty() ? weyl_test_grid(triple).front() : sc.z_list.front();
    std::vector<double> oracle_xs = {0.0, 0.5, 1.0, 2.0};
    reports.push_back(check_oracle(triple, z, oracle_xs));
    if (triple.s0_positive()) reports.push_back(check_weyl_membership(triple, z, 20.0));

    std::ostringstream os;
    os << scenario_header(sc, triple.n(), "verification report");
    for (const auto& r : reports) {
      os << r.line() << "\n";
      if (!r.pass) ++result.verify_failures;
    }
    emit("verify.txt", os.str());
  }
  return result;
}

RunResult run_weyl_table(const Scenario& sc, const std::vector<Complex>& zs,
                         const std::string& out_dir) {
  const GbdtTriple triple = scenario_triple(sc);
  std::filesystem::create_directories(out_dir);
  RunResult result;
  const std::string path = (std::filesystem::path(out_dir) / "weyl.csv").string();
  write_text_file(path, weyl_csv(sc, triple, zs));
  result.files.push_back(path);
  return result;
}

} // namespace gbdt
