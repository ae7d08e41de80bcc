/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gbdt/darboux.hpp"

#include <cmath>
#include <sstream>

namespace gbdt {

void require_exp_range(double x, double norm, const char* what) {
  if (!(std::abs(x) * norm <= kMatExpNormCap))
    fail(ErrorCode::Range, std::string(what) + ": |x|*||M|| = " +
                               std::to_string(std::abs(x) * norm) +
                               " exceeds the exponent cap " + std::to_string(kMatExpNormCap) +
                               "; use the asymptotic formulas instead of raw evaluation");
}

PiValue eval_pi(const GbdtTriple& triple, double x) {
  const auto& r = triple.realization;
  require_exp_range(x, r.q_norm, "eval_pi");
  const Complex i(0.0, 1.0);
  const CMatrix ep = mat_exp(i * x * r.q);
  const CMatrix em = mat_exp(-i * x * r.q);
  const Complex phase = std::exp(-i * r.seed.c * x);
  PiValue out;
  out.lambda1 = phase * (ep * r.f1 + em * r.f2);
  out.lambda2 = std::conj(phase) * (ep * r.f3 + em * r.f4);
  return out;
}

namespace {

CMatrix identity_rhs(const GbdtTriple& triple, const CMatrix& pi) {
  return Complex(0.0, 1.0) * pi * triple.kind().signature_kappa() * pi.adjoint();
}

CMatrix eval_s_sylvester(const GbdtTriple& triple, double x) {
  if (!triple.spectra_disjoint)
    fail(ErrorCode::SpectralCollision,
         "eval_s: sigma(A) meets sigma(A*); the algebraic route is unavailable, use "
         "quadrature");
  const CMatrix pi = eval_pi(triple, x).pi();
  CMatrix s = solve_sylvester(triple.a_mat(), triple.a_mat().adjoint(),
                              identity_rhs(triple, pi));
  return 0.5 * (s + s.adjoint());
}

CMatrix eval_s_quadrature(const GbdtTriple& triple, double x) {
  // Pi(x) vanishes identically when both block vectors do; the integral is 0.
  if (triple.realization.f1.cwiseAbs().maxCoeff() == 0.0 &&
      triple.realization.f2.cwiseAbs().maxCoeff() == 0.0)
    return triple.s0;
  const CMatrix jk1 = triple.kind().self_adjoint()
                          ? CMatrix(CMatrix::Identity(2 * triple.p(), 2 * triple.p()))
                          : triple.kind().signature();
  auto integrand = [&](double t) -> CMatrix {
    const CMatrix pi = eval_pi(triple, t).pi();
    return pi * jk1 * pi.adjoint();
  };
  CMatrix s = triple.s0 + integrate_matrix(integrand, 0.0, x, 1e-10);
  return 0.5 * (s + s.adjoint());
}

} // namespace

CMatrix eval_s(const GbdtTriple& triple, double x, SMethod method) {
  switch (method) {
    case SMethod::Sylvester: return eval_s_sylvester(triple, x);
    case SMethod::Quadrature: return eval_s_quadrature(triple, x);
    case SMethod::Auto:
      return triple.spectra_disjoint ? eval_s_sylvester(triple, x)
                                     : eval_s_quadrature(triple, x);
  }
  fail(ErrorCode::Internal, "eval_s: bad method");
}

GbdtState eval_state(const GbdtTriple& triple, double x, SMethod method) {
  PiValue pv = eval_pi(triple, x);
  CMatrix s = eval_s(triple, x, method);

  const CMatrix pi = pv.pi();
  const double resid = operator_norm(triple.a_mat() * s - s * triple.a_mat().adjoint() -
                                     identity_rhs(triple, pi));
  if (!(resid <= 1e-9 * (1.0 + operator_norm(s))))
    fail(ErrorCode::Internal, "eval_state: identity residual " + std::to_string(resid) +
                                  " at x = " + std::to_string(x));

  return GbdtState{x, std::move(pv.lambda1), std::move(pv.lambda2), s, HermitianSolver(s)};
}

CMatrix eval_transfer(const GbdtTriple& triple, const GbdtState& state, Complex z) {
  const auto& eigs = triple.a_eigs;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (std::abs(eigs(i) - z) <= 1e-12 * (1.0 + std::abs(z) + triple.a_norm)) {
      std::ostringstream os;
      os << "eval_transfer: z = " << z.real() << (z.imag() < 0 ? "-" : "+")
         << std::abs(z.imag()) << "i is an eigenvalue of A (pole)";
      fail(ErrorCode::Pole, os.str());
    }
  const int n = triple.n(), p2 = 2 * triple.p();
  const CMatrix pi = state.pi();
  const CMatrix resolvent_pi =
      (triple.a_mat() - z * CMatrix::Identity(n, n)).partialPivLu().solve(pi);
  return CMatrix::Identity(p2, p2) -
         Complex(0.0, 1.0) * triple.kind().signature_kappa() * pi.adjoint() *
             state.s_solver.solve(resolvent_pi);
}

CMatrix eval_transfer(const GbdtTriple& triple, double x, Complex z) {
  return eval_transfer(triple, eval_state(triple, x), z);
}

CMatrix eval_potential_block(const GbdtTriple& triple, const GbdtState& state) {
  const Complex coef = triple.kind().self_adjoint() ? Complex(0.0, -2.0) : Complex(2.0, 0.0);
  return triple.realization.seed.value(state.x) +
         coef * state.lambda1.adjoint() * state.s_solver.solve(state.lambda2);
}

CMatrix eval_potential_block(const GbdtTriple& triple, double x) {
  return eval_potential_block(triple, eval_state(triple, x));
}

CMatrix assemble_full_potential(const CMatrix& vblock) {
  const Eigen::Index p = vblock.rows();
  CMatrix big = CMatrix::Zero(2 * p, 2 * p);
  big.topRightCorner(p, p) = vblock;
  big.bottomLeftCorner(p, p) = vblock.adjoint();
  return big;
}

CMatrix eval_potential(const GbdtTriple& triple, double x) {
  return assemble_full_potential(eval_potential_block(triple, x));
}

double eval_omega(const GbdtTriple& triple, double x) {
  const std::string violated = dirac_weyl_hypothesis_violation(triple);
  if (!violated.empty())
    fail(ErrorCode::Hypotheses, "eval_omega: realness hypotheses violated: " + violated);
  GbdtState state = eval_state(triple, x);
  const Complex corr =
      (state.lambda1.adjoint() * state.s_solver.solve(state.lambda2))(0, 0);
  const Complex omega = Complex(0.0, -1.0) * (triple.realization.seed.a + 2.0 * corr);
  if (std::abs(omega.imag()) > 1e-11 * (1.0 + std::abs(omega)))
    fail(ErrorCode::Inconsistency, "eval_omega: imaginary residue " +
                                       std::to_string(omega.imag()) + " at x = " +
                                       std::to_string(x));
  return omega.real();
}

double steplike_plateau_forward(double r, double lambda, double mu) {
  return r + 4.0 * r * lambda * (mu - lambda) / (r * r + (mu - lambda) * (mu - lambda));
}

double steplike_plateau_backward(double r, double lambda, double mu) {
  return r - 4.0 * r * lambda * (mu + lambda) / (r * r + (mu + lambda) * (mu + lambda));
}

double growth_reference_constant(double r, double lambda, double mu) {
  const double lm = lambda - mu;
  const double num = 16.0 * r * lm * std::pow(lambda, 5) * (r * r + lm * lm);
  const double den = mu * mu * (std::pow(lm, 4) + std::pow(r, 4)) +
                     2.0 * lm * lm * r * r * (2.0 * lambda * lambda + mu * mu);
  return num / den;
}

} // namespace gbdt
