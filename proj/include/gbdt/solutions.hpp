/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GBDT_SOLUTIONS_HPP
#define GBDT_SOLUTIONS_HPP

#include "gbdt/darboux.hpp"

namespace gbdt {

/// Branch of zeta(z):
///   Plus  = the half-plane rule (zeta in C+ for z in C+, continuity on the
///           real axis), the branch Weyl theory needs;
///   Minus = its negative.
enum class ZetaBranch { Plus, Minus };

/// zeta with zeta^2 = (z-c)^2 - |a|^2 (self-adjoint) or (z-c)^2 + |a|^2
/// (skew), Plus branch. Throws at the branch points (zeta = 0).
Complex zeta_branch(Complex z, const SeedPotential& seed, SystemKind kind);
Complex zeta_value(Complex z, const SeedPotential& seed, SystemKind kind, ZetaBranch branch);

/// The constant factor of the seed fundamental solution:
///   self-adjoint: [[a I, a I], [(zeta-z+c) I, (-zeta-z+c) I]]
///   skew:         [[ia I, ia I], [(z-c-zeta) I, (z-c+zeta) I]]
CMatrix z_matrix(Complex z, const SeedPotential& seed, SystemKind kind,
                 ZetaBranch branch = ZetaBranch::Plus);

/// Seed fundamental solution u(x,z) = e^{icxj} Z(z) e^{ix zeta j}.
CMatrix seed_fundamental(const SeedPotential& seed, SystemKind kind, double x, Complex z,
                         ZetaBranch branch = ZetaBranch::Plus);

/// Transformed fundamental solution  u~(x,z) = w_A(x,z) u(x,z).
CMatrix transformed_fundamental(const GbdtTriple& triple, double x, Complex z,
                                ZetaBranch branch = ZetaBranch::Plus);

/// Normalized fundamental solution
///   W(x,z) = w_A(x,z) u(x,z) Z(z)^{-1} w_A(0,z)^{-1},  W(0,z) = I.
CMatrix normalized_fundamental(const GbdtTriple& triple, double x, Complex z,
                               ZetaBranch branch = ZetaBranch::Plus);

/// Dynamical solution psi(x,xi) = Pi(x)* S(x)^{-1} e^{-xi A}  (2p x n).
CMatrix dynamical_solution(const GbdtTriple& triple, double x, double xi);
CMatrix dynamical_solution(const GbdtTriple& triple, const GbdtState& state, double xi);

} // namespace gbdt

#endif
