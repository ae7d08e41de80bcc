/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gbdt_dirac.h"

#include "gbdt/scenario.hpp"

#include <cstring>
#include <new>
#include <string>

using namespace gbdt;

struct gd_scenario {
  Scenario sc;
};

struct gd_triple {
  GbdtTriple triple;
};

namespace {

thread_local std::string g_last_error;

gd_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return GD_ERR_INVALID_ARGUMENT;
    case ErrorCode::Dimension: return GD_ERR_DIMENSION;
    case ErrorCode::BranchCut: return GD_ERR_BRANCH_CUT;
    case ErrorCode::DegenerateSpectrum: return GD_ERR_DEGENERATE_SPECTRUM;
    case ErrorCode::SpectralCollision: return GD_ERR_SPECTRAL_COLLISION;
    case ErrorCode::Range: return GD_ERR_RANGE;
    case ErrorCode::Singular: return GD_ERR_SINGULAR;
    case ErrorCode::IllConditioned: return GD_ERR_ILL_CONDITIONED;
    case ErrorCode::Pole: return GD_ERR_POLE;
    case ErrorCode::Hypotheses: return GD_ERR_HYPOTHESES;
    case ErrorCode::Normalization: return GD_ERR_NORMALIZATION;
    case ErrorCode::Inconsistency: return GD_ERR_INCONSISTENCY;
    case ErrorCode::NonConvergence: return GD_ERR_NON_CONVERGENCE;
    case ErrorCode::Parse: return GD_ERR_PARSE;
    case ErrorCode::Io: return GD_ERR_IO;
    case ErrorCode::UnknownName: return GD_ERR_UNKNOWN_NAME;
    case ErrorCode::Internal: return GD_ERR_INTERNAL;
  }
  return GD_ERR_INTERNAL;
}

template <typename Fn>
gd_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GD_ERR_INTERNAL;
  }
}

gd_status invalid(const char* what) {
  g_last_error = what;
  return GD_ERR_INVALID_ARGUMENT;
}

void copy_matrix(const CMatrix& m, double* re, double* im) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const size_t at = static_cast<size_t>(i) * m.cols() + k;
      if (re) re[at] = m(i, k).real();
      if (im) im[at] = m(i, k).imag();
    }
}

gd_status fill_text(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf) return GD_OK;
  if (cap < text.size() + 1) {
    g_last_error = "buffer too small: need " + std::to_string(text.size() + 1) + " bytes";
    return GD_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buf, text.data(), text.size());
  buf[text.size()] = '\0';
  return GD_OK;
}

} // namespace

extern "C" {

const char* gd_version(void) { return "0.1.0"; }

const char* gd_status_name(gd_status status) {
  switch (status) {
    case GD_OK: return "ok";
    case GD_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GD_ERR_DIMENSION: return "dimension";
    case GD_ERR_BRANCH_CUT: return "branch_cut";
    case GD_ERR_DEGENERATE_SPECTRUM: return "degenerate_spectrum";
    case GD_ERR_SPECTRAL_COLLISION: return "spectral_collision";
    case GD_ERR_RANGE: return "range";
    case GD_ERR_SINGULAR: return "singular";
    case GD_ERR_ILL_CONDITIONED: return "ill_conditioned";
    case GD_ERR_POLE: return "pole";
    case GD_ERR_HYPOTHESES: return "hypotheses";
    case GD_ERR_NORMALIZATION: return "normalization";
    case GD_ERR_INCONSISTENCY: return "inconsistency";
    case GD_ERR_NON_CONVERGENCE: return "non_convergence";
    case GD_ERR_PARSE: return "parse";
    case GD_ERR_IO: return "io";
    case GD_ERR_UNKNOWN_NAME: return "unknown_name";
    case GD_ERR_INTERNAL: return "internal";
    case GD_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    default: return "unknown";
  }
}

const char* gd_last_error_message(void) { return g_last_error.c_str(); }

gd_status gd_scenario_from_file(const char* path, gd_scenario** out) {
  if (!path || !out) return invalid("gd_scenario_from_file: null argument");
  return guarded([&] { *out = new gd_scenario{Scenario::from_file(path)}; });
}

gd_status gd_scenario_from_string(const char* json_text, gd_scenario** out) {
  if (!json_text || !out) return invalid("gd_scenario_from_string: null argument");
  return guarded([&] { *out = new gd_scenario{Scenario::from_json_text(json_text)}; });
}

gd_status gd_scenario_example(const char* name, gd_scenario** out) {
  if (!name || !out) return invalid("gd_scenario_example: null argument");
  return guarded([&] { *out = new gd_scenario{example_scenario(name)}; });
}

void gd_scenario_free(gd_scenario* sc) { delete sc; }

gd_status gd_scenario_to_json(const gd_scenario* sc, char* buf, size_t cap,
                              size_t* needed) {
  if (!sc) return invalid("gd_scenario_to_json: null scenario");
  gd_status rc = GD_OK;
  const gd_status run = guarded([&] { rc = fill_text(sc->sc.to_json_text(), buf, cap, needed); });
  return run != GD_OK ? run : rc;
}

gd_status gd_scenario_run(const gd_scenario* sc, const char* out_dir,
                          uint32_t* verify_failures) {
  if (!sc || !out_dir) return invalid("gd_scenario_run: null argument");
  return guarded([&] {
    const RunResult r = run_scenario(sc->sc, out_dir);
    if (verify_failures) *verify_failures = static_cast<uint32_t>(r.verify_failures);
  });
}

gd_status gd_scenario_weyl_table(const gd_scenario* sc, const double* z_re,
                                 const double* z_im, size_t nz, const char* out_dir) {
  if (!sc || !z_re || !z_im || !out_dir || nz == 0)
    return invalid("gd_scenario_weyl_table: null argument or empty z list");
  return guarded([&] {
    std::vector<Complex> zs(nz);
    for (size_t i = 0; i < nz; ++i) zs[i] = Complex(z_re[i], z_im[i]);
    run_weyl_table(sc->sc, zs, out_dir);
  });
}

gd_status gd_triple_create(const gd_scenario* sc, gd_triple** out) {
  if (!sc || !out) return invalid("gd_triple_create: null argument");
  return guarded([&] { *out = new gd_triple{scenario_triple(sc->sc)}; });
}

void gd_triple_free(gd_triple* t) { delete t; }

gd_status gd_triple_dims(const gd_triple* t, int32_t* n, int32_t* p, int32_t* kind,
                         int32_t* s0_positive) {
  if (!t) return invalid("gd_triple_dims: null triple");
  if (n) *n = t->triple.n();
  if (p) *p = t->triple.p();
  if (kind)
    *kind = t->triple.kind().self_adjoint() ? GD_KIND_SELF_ADJOINT
                                            : GD_KIND_SKEW_SELF_ADJOINT;
  if (s0_positive) *s0_positive = t->triple.s0_positive() ? 1 : 0;
  return GD_OK;
}

gd_status gd_triple_potential(const gd_triple* t, double x, double* v_re, double* v_im) {
  if (!t || !v_re || !v_im) return invalid("gd_triple_potential: null argument");
  return guarded([&] { copy_matrix(eval_potential_block(t->triple, x), v_re, v_im); });
}

gd_status gd_triple_omega(const gd_triple* t, double x, double* omega) {
  if (!t || !omega) return invalid("gd_triple_omega: null argument");
  return guarded([&] { *omega = eval_omega(t->triple, x); });
}

gd_status gd_triple_s(const gd_triple* t, double x, int32_t method, double* s_re,
                      double* s_im, double* min_eig) {
  if (!t || !s_re || !s_im) return invalid("gd_triple_s: null argument");
  SMethod m = SMethod::Auto;
  if (method == GD_S_SYLVESTER) m = SMethod::Sylvester;
  else if (method == GD_S_QUADRATURE) m = SMethod::Quadrature;
  else if (method != GD_S_AUTO) return invalid("gd_triple_s: bad method");
  return guarded([&] {
    const CMatrix s = eval_s(t->triple, x, m);
    copy_matrix(s, s_re, s_im);
    if (min_eig) *min_eig = HermitianSolver(s).min_eigenvalue();
  });
}

gd_status gd_triple_transfer(const gd_triple* t, double x, double z_re, double z_im,
                             double* w_re, double* w_im) {
  if (!t || !w_re || !w_im) return invalid("gd_triple_transfer: null argument");
  return guarded(
      [&] { copy_matrix(eval_transfer(t->triple, x, Complex(z_re, z_im)), w_re, w_im); });
}

gd_status gd_triple_weyl(const gd_triple* t, double z_re, double z_im, int32_t method,
                         double* phi_re, double* phi_im) {
  if (!t || !phi_re || !phi_im) return invalid("gd_triple_weyl: null argument");
  if (method != GD_WEYL_Y_QUOTIENT && method != GD_WEYL_REALIZATION)
    return invalid("gd_triple_weyl: bad method");
  return guarded([&] {
    const Complex z(z_re, z_im);
    const WeylValue w = method == GD_WEYL_Y_QUOTIENT ? weyl_via_y(t->triple, z)
                                                     : weyl_realization(t->triple, z);
    copy_matrix(w.phi, phi_re, phi_im);
  });
}

gd_status gd_triple_dynamical(const gd_triple* t, double x, double xi, double* psi_re,
                              double* psi_im) {
  if (!t || !psi_re || !psi_im) return invalid("gd_triple_dynamical: null argument");
  return guarded([&] { copy_matrix(dynamical_solution(t->triple, x, xi), psi_re, psi_im); });
}

gd_status gd_triple_verify(const gd_triple* t, char* buf, size_t cap, size_t* needed,
                           uint32_t* failures) {
  if (!t) return invalid("gd_triple_verify: null triple");
  gd_status rc = GD_OK;
  const gd_status run = guarded([&] {
    const bool sa = t->triple.kind().self_adjoint();
    const auto xs = linspace(sa ? 0.0 : -2.0, 2.0, 41);
    const auto xis = linspace(-1.0, 1.0, 20);
    const auto reports = run_all_checks(t->triple, xs, xis, {});
    std::string text;
    uint32_t bad = 0;
    for (const auto& r : reports) {
      text += r.line();
      text += '\n';
      if (!r.pass) ++bad;
    }
    if (failures) *failures = bad;
    rc = fill_text(text, buf, cap, needed);
  });
  return run != GD_OK ? run : rc;
}

} /* extern "C" */
