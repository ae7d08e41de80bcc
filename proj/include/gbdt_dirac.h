/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * C interface of the gbdt-dirac engine. All functions return a gd_status;
 * GD_OK means success, anything else is an error whose human-readable detail
 * is available from gd_last_error_message() (thread-local). Matrices cross
 * the boundary as separate re/im double arrays in row-major order; the caller
 * owns all buffers.
 */
#ifndef GBDT_DIRAC_H
#define GBDT_DIRAC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GD_API __declspec(dllexport)
#else
#define GD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t gd_status;

enum {
  GD_OK = 0,
  GD_ERR_INVALID_ARGUMENT = 1,
  GD_ERR_DIMENSION = 2,
  GD_ERR_BRANCH_CUT = 3,
  GD_ERR_DEGENERATE_SPECTRUM = 4,
  GD_ERR_SPECTRAL_COLLISION = 5,
  GD_ERR_RANGE = 6,
  GD_ERR_SINGULAR = 7,
  GD_ERR_ILL_CONDITIONED = 8,
  GD_ERR_POLE = 9,
  GD_ERR_HYPOTHESES = 10,
  GD_ERR_NORMALIZATION = 11,
  GD_ERR_INCONSISTENCY = 12,
  GD_ERR_NON_CONVERGENCE = 13,
  GD_ERR_PARSE = 14,
  GD_ERR_IO = 15,
  GD_ERR_UNKNOWN_NAME = 16,
  GD_ERR_INTERNAL = 17,
  GD_ERR_BUFFER_TOO_SMALL = 18,
};

/* System kinds as returned by gd_triple_dims. */
enum {
  GD_KIND_SELF_ADJOINT = 0,
  GD_KIND_SKEW_SELF_ADJOINT = 1,
};

/* S(x) evaluation methods. */
enum {
  GD_S_AUTO = 0,
  GD_S_SYLVESTER = 1,
  GD_S_QUADRATURE = 2,
};

/* Weyl evaluation methods. */
enum {
  GD_WEYL_Y_QUOTIENT = 0,
  GD_WEYL_REALIZATION = 1,
};

typedef struct gd_scenario gd_scenario;
typedef struct gd_triple gd_triple;

GD_API const char* gd_version(void);
GD_API const char* gd_status_name(gd_status status);
/* Detail text of the most recent failure on this thread; empty on success. */
GD_API const char* gd_last_error_message(void);

/* ---- scenarios ------------------------------------------------------- */

GD_API gd_status gd_scenario_from_file(const char* path, gd_scenario** out);
GD_API gd_status gd_scenario_from_string(const char* json_text, gd_scenario** out);
/* name: ee-dw0 | ee-dw1 | trivial-sa | trivial-ssa */
GD_API gd_status gd_scenario_example(const char* name, gd_scenario** out);
GD_API void gd_scenario_free(gd_scenario* sc);

/* Canonical JSON serialization. Two-call protocol: pass buf=NULL to query the
 * required size (including the terminating NUL) through *needed. */
GD_API gd_status gd_scenario_to_json(const gd_scenario* sc, char* buf, size_t cap,
                                     size_t* needed);

/* Runs the scenario, writing the requested artifacts into out_dir.
 * *verify_failures receives the number of failed verification checks (0 when
 * the scenario does not request the verify artifact). */
GD_API gd_status gd_scenario_run(const gd_scenario* sc, const char* out_dir,
                                 uint32_t* verify_failures);

/* Weyl table for an explicit z list (re/im arrays of length nz). */
GD_API gd_status gd_scenario_weyl_table(const gd_scenario* sc, const double* z_re,
                                        const double* z_im, size_t nz,
                                        const char* out_dir);

/* ---- triples --------------------------------------------------------- */

GD_API gd_status gd_triple_create(const gd_scenario* sc, gd_triple** out);
GD_API void gd_triple_free(gd_triple* t);

/* n, p, kind (GD_KIND_*), s0_positive (0/1). Any pointer may be NULL. */
GD_API gd_status gd_triple_dims(const gd_triple* t, int32_t* n, int32_t* p,
                                int32_t* kind, int32_t* s0_positive);

/* Transformed potential block v~(x): p*p row-major re/im. */
GD_API gd_status gd_triple_potential(const gd_triple* t, double x, double* v_re,
                                     double* v_im);

/* Dirac-Weyl scalar potential; requires the realness hypotheses. */
GD_API gd_status gd_triple_omega(const gd_triple* t, double x, double* omega);

/* S(x): n*n row-major re/im; method is one of GD_S_*. min_eig may be NULL. */
GD_API gd_status gd_triple_s(const gd_triple* t, double x, int32_t method, double* s_re,
                             double* s_im, double* min_eig);

/* Darboux matrix w_A(x,z): 2p*2p row-major re/im. */
GD_API gd_status gd_triple_transfer(const gd_triple* t, double x, double z_re,
                                    double z_im, double* w_re, double* w_im);

/* Weyl function phi(z): p*p row-major re/im; method is one of GD_WEYL_*. */
GD_API gd_status gd_triple_weyl(const gd_triple* t, double z_re, double z_im,
                                int32_t method, double* phi_re, double* phi_im);

/* Dynamical solution psi(x,xi): (2p)*n row-major re/im. */
GD_API gd_status gd_triple_dynamical(const gd_triple* t, double x, double xi,
                                     double* psi_re, double* psi_im);

/* Runs the full verification battery on canonical grids and serializes the
 * line-oriented report. Two-call protocol as in gd_scenario_to_json;
 * *failures receives the number of failing checks. */
GD_API gd_status gd_triple_verify(const gd_triple* t, char* buf, size_t cap,
                                  size_t* needed, uint32_t* failures);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GBDT_DIRAC_H */
