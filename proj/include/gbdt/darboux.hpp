/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GBDT_DARBOUX_HPP
#define GBDT_DARBOUX_HPP

#include "gbdt/triple.hpp"

namespace gbdt {

struct PiValue {
  CMatrix lambda1, lambda2; // n x p each

  CMatrix pi() const {
    CMatrix m(lambda1.rows(), lambda1.cols() + lambda2.cols());
    m << lambda1, lambda2;
    return m;
  }
};

enum class SMethod {
  Auto,      // Sylvester when sigma(A) and sigma(A*) are disjoint, else quadrature
  Sylvester, // algebraic recovery from the identity at x
  Quadrature // S(0) + adaptive Gauss-Legendre integral
};

/// Closed-form Pi(x):
///   Lambda1 = e^{-icx} (e^{ixQ} f1 + e^{-ixQ} f2)
///   Lambda2 = e^{+icx} (e^{ixQ} f3 + e^{-ixQ} f4)
/// Rejects |x| * ||Q|| beyond the exponent cap.
PiValue eval_pi(const GbdtTriple& triple, double x);

CMatrix eval_s(const GbdtTriple& triple, double x, SMethod method = SMethod::Auto);

/// Pi(x), S(x) and the factorization of S(x) at one coordinate, with the
/// identity A S - S A* = i Pi j^kappa Pi* re-validated.
struct GbdtState {
  double x = 0.0;
  CMatrix lambda1, lambda2;
  CMatrix s;
  HermitianSolver s_solver;

  CMatrix pi() const {
    CMatrix m(lambda1.rows(), lambda1.cols() + lambda2.cols());
    m << lambda1, lambda2;
    return m;
  }
};

GbdtState eval_state(const GbdtTriple& triple, double x, SMethod method = SMethod::Auto);

/// Darboux matrix w_A(x,z) = I - i j^kappa Pi(x)* S(x)^{-1} (A - zI)^{-1} Pi(x).
CMatrix eval_transfer(const GbdtTriple& triple, double x, Complex z);
CMatrix eval_transfer(const GbdtTriple& triple, const GbdtState& state, Complex z);

/// Transformed potential block:
///   self-adjoint:  v(x) - 2i Lambda1* S^{-1} Lambda2
///   skew:          v(x) + 2  Lambda1* S^{-1} Lambda2
CMatrix eval_potential_block(const GbdtTriple& triple, double x);
CMatrix eval_potential_block(const GbdtTriple& triple, const GbdtState& state);

/// Full 2p x 2p potential [[0, v~], [v~*, 0]].
CMatrix eval_potential(const GbdtTriple& triple, double x);
CMatrix assemble_full_potential(const CMatrix& vblock);

/// Dirac-Weyl scalar potential omega(x) = -i (a + 2 Lambda1* S^{-1} Lambda2).
/// Requires p=1, the skew kind and the realness hypotheses.
double eval_omega(const GbdtTriple& triple, double x);

/// Printed asymptotic values for the two canned scalar families (n=1 steplike
/// and n=2 quadratic-growth); parameters r, lambda, mu with mu^2 =
/// lambda^2 - r^2.
double steplike_plateau_forward(double r, double lambda, double mu);  // x -> +inf, mu > 0
double steplike_plateau_backward(double r, double lambda, double mu); // x -> -inf, mu > 0
double growth_reference_constant(double r, double lambda, double mu); // quoted x^2 coefficient

/// Throws ErrorCode::Range if |x| * norm exceeds the exponent cap.
void require_exp_range(double x, double norm, const char* what);

} // namespace gbdt

#endif
