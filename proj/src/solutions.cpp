/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gbdt/solutions.hpp"

#include <cmath>

namespace gbdt {

namespace {

Complex normalize_imag_zero(Complex z) {
  // Keep the +0 side of branch cuts for real inputs.
  if (z.imag() == 0.0) return Complex(z.real(), +0.0);
  return z;
}

} // namespace

Complex zeta_branch(Complex z, const SeedPotential& seed, SystemKind kind) {
  return zeta_value(z, seed, kind, ZetaBranch::Plus);
}

Complex zeta_value(Complex z, const SeedPotential& seed, SystemKind kind,
                   ZetaBranch branch) {
  const Complex w = normalize_imag_zero(z - seed.c);
  const double amod = std::abs(seed.a);
  Complex zeta;
  if (kind.self_adjoint()) {
    // sqrt(z-c-|a|) * sqrt(z-c+|a|): cut on [c-|a|, c+|a|], zeta ~ z-c at
    // infinity, Im(zeta) > 0 on C+.
    zeta = std::sqrt(normalize_imag_zero(w - amod)) *
           std::sqrt(normalize_imag_zero(w + amod));
  } else {
    // (z-c) sqrt(1 + |a|^2/(z-c)^2): cut on the segment [c-i|a|, c+i|a|],
    // zeta ~ z-c at infinity.
    if (w == Complex(0.0, 0.0)) {
      zeta = Complex(amod, 0.0); // right-edge convention on the cut
    } else {
      zeta = w * std::sqrt(Complex(1.0, 0.0) + (amod * amod) / (w * w));
    }
  }
  const double scale = 1.0 + amod + std::abs(w);
  if (std::abs(zeta) <= 1e-12 * scale)
    fail(ErrorCode::DegenerateSpectrum,
         "zeta: z is at a branch point (zeta(z) = 0); the seed fundamental solution "
         "degenerates there");
  return branch == ZetaBranch::Plus ? zeta : -zeta;
}

CMatrix z_matrix(Complex z, const SeedPotential& seed, SystemKind kind, ZetaBranch branch) {
  const int p = seed.p;
  const Complex zeta = zeta_value(z, seed, kind, branch);
  const CMatrix ip = CMatrix::Identity(p, p);
  CMatrix zm(2 * p, 2 * p);
  if (kind.self_adjoint()) {
    zm.topLeftCorner(p, p) = seed.a * ip;
    zm.topRightCorner(p, p) = seed.a * ip;
    zm.bottomLeftCorner(p, p) = (zeta - z + seed.c) * ip;
    zm.bottomRightCorner(p, p) = (-zeta - z + seed.c) * ip;
  } else {
    const Complex ia = Complex(0.0, 1.0) * seed.a;
    zm.topLeftCorner(p, p) = ia * ip;
    zm.topRightCorner(p, p) = ia * ip;
    zm.bottomLeftCorner(p, p) = (z - seed.c - zeta) * ip;
    zm.bottomRightCorner(p, p) = (z - seed.c + zeta) * ip;
  }
  return zm;
}

CMatrix seed_fundamental(const SeedPotential& seed, SystemKind kind, double x, Complex z,
                         ZetaBranch branch) {
  const int p = seed.p;
  const Complex i(0.0, 1.0);
  const Complex zeta = zeta_value(z, seed, kind, branch);
  require_exp_range(x, std::abs(zeta) + std::abs(seed.c), "seed_fundamental");

  const CMatrix zm = z_matrix(z, seed, kind, branch);
  // e^{icxj} Z e^{ix zeta j} with both exponentials diagonal.
  CMatrix u(2 * p, 2 * p);
  const Complex cl = std::exp(i * seed.c * x), cr = std::exp(-i * seed.c * x);
  const Complex el = std::exp(i * x * zeta), er = std::exp(-i * x * zeta);
  u.topLeftCorner(p, p) = cl * el * zm.topLeftCorner(p, p);
  u.topRightCorner(p, p) = cl * er * zm.topRightCorner(p, p);
  u.bottomLeftCorner(p, p) = cr * el * zm.bottomLeftCorner(p, p);
  u.bottomRightCorner(p, p) = cr * er * zm.bottomRightCorner(p, p);
  return u;
}

CMatrix transformed_fundamental(const GbdtTriple& triple, double x, Complex z,
                                ZetaBranch branch) {
  return eval_transfer(triple, x, z) *
         seed_fundamental(triple.realization.seed, triple.kind(), x, z, branch);
}

CMatrix normalized_fundamental(const GbdtTriple& triple, double x, Complex z,
                               ZetaBranch branch) {
  const auto& seed = triple.realization.seed;
  const CMatrix zm = z_matrix(z, seed, triple.kind(), branch);
  Eigen::PartialPivLU<CMatrix> zlu(zm);
  if (!(std::abs(zlu.determinant()) > 1e-12))
    fail(ErrorCode::Normalization, "normalized_fundamental: Z(z) is singular");
  const CMatrix w0 = eval_transfer(triple, 0.0, z);
  Eigen::PartialPivLU<CMatrix> wlu(w0);
  if (!(std::abs(wlu.determinant()) > 1e-14))
    fail(ErrorCode::Normalization, "normalized_fundamental: w_A(0,z) is singular");
  const CMatrix ut = transformed_fundamental(triple, x, z, branch);
  return ut * zlu.solve(wlu.inverse());
}

CMatrix dynamical_solution(const GbdtTriple& triple, const GbdtState& state, double xi) {
  require_exp_range(xi, triple.a_norm, "dynamical_solution");
  const CMatrix decay = mat_exp(-xi * triple.a_mat());
  return state.s_solver.solve(state.pi()).adjoint() * decay;
}

CMatrix dynamical_solution(const GbdtTriple& triple, double x, double xi) {
  return dynamical_solution(triple, eval_state(triple, x), xi);
}

} // namespace gbdt
