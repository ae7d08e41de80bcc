/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GBDT_WEYL_HPP
#define GBDT_WEYL_HPP

#include "gbdt/solutions.hpp"

#include <vector>

namespace gbdt {

enum class WeylMethod { YQuotient, Realization };

struct WeylValue {
  Complex z;
  CMatrix phi; // p x p
  SystemKind kind;
  WeylMethod method;
};

/// z-dependent data of the linear-fractional realization of phi(z).
struct WeylRealization {
  Complex z;
  Complex h;
  CMatrix d;      // p x p
  CMatrix c1, c2; // p x n
  CMatrix b;      // n x p
  CMatrix across; // A - B C1
};

/// Theta = (1/sqrt 2) [[I, -I], [I, I]] (self-adjoint rotation).
CMatrix theta_matrix(int p);

/// (D - C2 (A-zI)^{-1} B)(I - C1 (A-zI)^{-1} B)^{-1}, evaluated through the
/// realization D + (D C1 - C2)(A^x - zI)^{-1} B with A^x = A - B C1; the two
/// routes are cross-checked at every call.
CMatrix lft_realize(const CMatrix& d, const CMatrix& c1, const CMatrix& c2,
                    const CMatrix& b, const CMatrix& a, Complex z);

/// Weyl function through the Y-quotient:
///   self-adjoint: Y = Theta w_A(0,z) Z(z) [I;0], phi = i Y2 Y1^{-1}
///   skew:         Y =       w_A(0,z) Z(z) [I;0], phi =   Y2 Y1^{-1}
WeylValue weyl_via_y(const GbdtTriple& triple, Complex z);

WeylRealization build_weyl_realization(const GbdtTriple& triple, Complex z);

/// Weyl function through the linear-fractional realization; cross-checked
/// against the Y-quotient (they must agree wherever both are defined).
WeylValue weyl_realization(const GbdtTriple& triple, Complex z);

/// Adaptive lower bound M for the half-plane C_M of the skew kind: starts at
/// ||Q|| + ||A|| + 1 and halves while Y1 stays well-conditioned on a probe
/// grid.
double suggest_weyl_imag(const GbdtTriple& triple);

/// 10 z-points on the segment {Im z = M+1, Re z in [-5, 5]}.
std::vector<Complex> weyl_test_grid(const GbdtTriple& triple);

/// Membership integrand of the Weyl definition at one x, for an arbitrary
/// candidate phi (squared Frobenius norm of the defining column):
///   self-adjoint: || W(x,z) Theta* [I; -i phi] ||_F^2
///   skew:         || W(x,z)        [I;    phi] ||_F^2
/// Direct evaluation; loses accuracy once the suppressed growing mode exceeds
/// roundoff, so keep x moderate; used chiefly for negative controls.
double membership_integrand(const GbdtTriple& triple, Complex z, const CMatrix& phi,
                            double x);

/// Same integrand for the engine's own Weyl function, computed through the
/// cancellation-free identity
///   W(x,z) (Theta*) [I; -\+ i phi] = e^{ix zeta} w_A(x,z) e^{icxj} Zc1 Y1^{-1}
/// (Zc1 = first block column of Z). Stable for large x.
double membership_integrand_stable(const GbdtTriple& triple, Complex z, double x);

/// Partial integrals of the stable membership integrand accumulated over
/// panels of [0, x_max]; returned as (x_end, partial_integral) pairs.
std::vector<std::pair<double, double>> membership_partials(const GbdtTriple& triple,
                                                           Complex z, double x_max);

/// sup over a grid of [0, ell] of || e^{-izx} W(x,z) [I; phi] || (skew kind).
double gw_sup(const GbdtTriple& triple, Complex z, const CMatrix& phi, double ell);

} // namespace gbdt

#endif
