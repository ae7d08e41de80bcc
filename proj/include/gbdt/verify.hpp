/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GBDT_VERIFY_HPP
#define GBDT_VERIFY_HPP

#include "gbdt/weyl.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gbdt {

struct VerifyReport {
  std::string check_id;
  std::string grid;
  double worst_residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string location;

  /// One line: id,worst_residual,threshold,pass,location
  std::string line() const;
};

using PotentialFn = std::function<CMatrix(double)>; // full 2p x 2p V(x)

/// Classical fixed-step RK4 for y' = i(zj + jV)y (self-adjoint) or
/// y' = (izj + jV)y (skew). Integrates from x_grid.front() through every grid
/// point with substeps of length <= max_step; returns y at each grid point.
/// No adaptivity: trajectories are bitwise reproducible.
std::vector<CMatrix> rk4_integrate(SystemKind kind, const PotentialFn& potential,
                                   Complex z, const CMatrix& y0,
                                   const std::vector<double>& x_grid,
                                   double max_step = 1e-3);

/// Identity A S(x) - S(x) A* = i Pi(x) j^kappa Pi(x)* on the grid, with S(x)
/// from the quadrature route so that corruptions of S(0) are visible.
/// Threshold 1e-9 (1 + ||S||).
VerifyReport check_identity(const GbdtTriple& triple, const std::vector<double>& xs);

/// Min eigenvalue of S(x) over the grid (self-adjoint kind restricted to
/// x >= 0). Report-only sign check: passes iff min eig > 0 everywhere.
VerifyReport check_positivity(const GbdtTriple& triple, const std::vector<double>& xs);

/// Skew kind: R(x) = e^{-ixA} S(x) e^{ixA*} discrete non-decreasing on the
/// x >= 0 part of the grid, companion e^{ixA} S(x) e^{-ixA*} non-increasing
/// on x <= 0; eigenvalue tolerance 1e-9.
VerifyReport check_monitors(const GbdtTriple& triple, const std::vector<double>& xs);

/// Central-difference derivative of Lambda1/Lambda2 against the dual
/// equations; h = 1e-5, relative threshold 1e-6.
VerifyReport check_dual_ode(const GbdtTriple& triple, const std::vector<double>& xs);

/// Central-difference derivative of Pi* S^{-1} against its evolution
/// equation; h = 1e-5, relative threshold 1e-5.
VerifyReport check_pispluss(const GbdtTriple& triple, const std::vector<double>& xs);

/// Dynamical-system residual of psi = Pi* S^{-1} e^{-xi A} at the tensor grid,
/// central differences h = 1e-4 in both variables, absolute threshold 1e-5.
/// For the p=1 skew kind under the realness hypotheses the sigma-matrix form
/// is checked as well.
VerifyReport check_pde(const GbdtTriple& triple, const std::vector<double>& xs,
                       const std::vector<double>& xis);

/// Partial membership integrals on [0, x_max]: monotone non-decreasing and
/// bounded (tail increment small); for the skew kind also finiteness of the
/// normalized-column sup at ell in {1, 5, 10}.
VerifyReport check_weyl_membership(const GbdtTriple& triple, Complex z, double x_max);

/// Transformed fundamental solution against an RK4 trajectory started from
/// u~(0,z); relative threshold 1e-6 at the grid ends.
VerifyReport check_oracle(const GbdtTriple& triple, Complex z,
                          const std::vector<double>& xs);

/// The full battery with canonical grids; one report per check.
std::vector<VerifyReport> run_all_checks(const GbdtTriple& triple,
                                         const std::vector<double>& xs,
                                         const std::vector<double>& xis,
                                         const std::vector<Complex>& zs,
                                         double x_max_membership = 20.0);

} // namespace gbdt

#endif
