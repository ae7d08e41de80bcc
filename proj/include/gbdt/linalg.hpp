/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GBDT_LINALG_HPP
#define GBDT_LINALG_HPP

#include "gbdt/types.hpp"

#include <functional>
#include <vector>

namespace gbdt {

// Exponent cap: matrices with larger spectral norm are rejected instead of
// silently producing Inf (e^300 is still comfortably inside double range,
// entry products are not once the norm grows much past that).
inline constexpr double kMatExpNormCap = 300.0;
// Relative eigenvalue gap below which A and B are treated as resonant in the
// Sylvester solver.
inline constexpr double kSylvesterGapTol = 1e-8;
// Condition-number cap for Hermitian solves of S(x).
inline constexpr double kConditionCap = 1e12;

/// Spectral (operator 2-) norm. This is the norm convention used everywhere.
double operator_norm(const CMatrix& m);

bool all_finite(const CMatrix& m);

/// Eigenvalues (unordered) of a general square complex matrix.
CVector eigenvalues(const CMatrix& m);

/// exp(M) for square complex M, ||M|| <= kMatExpNormCap.
CMatrix mat_exp(const CMatrix& m);

/// Principal square root of M. Requires that no eigenvalue of M lies on the
/// closed negative real axis; otherwise throws ErrorCode::BranchCut with a
/// hint to use the Jordan-recursion path.
CMatrix principal_sqrt(const CMatrix& m);

/// Unique X with A*X - X*B = C, spectra of A and B disjoint
/// (relative gap kSylvesterGapTol). Bartels-Stewart on complex Schur forms.
CMatrix solve_sylvester(const CMatrix& a, const CMatrix& b, const CMatrix& c);

/// Spectral factorization of a Hermitian matrix; used for S(x) solves with a
/// condition-number report. Refuses to solve past kConditionCap.
class HermitianSolver {
public:
  explicit HermitianSolver(const CMatrix& s);

  double condition() const noexcept { return condition_; }
  double min_eigenvalue() const noexcept { return min_eig_; }
  bool positive_definite() const noexcept { return min_eig_ > 0.0; }

  CMatrix solve(const CMatrix& rhs) const;
  CMatrix inverse() const;

private:
  Eigen::VectorXd eigs_;
  CMatrix vecs_;
  double condition_ = 0.0;
  double min_eig_ = 0.0;
};

/// Adaptive composite Gauss-Legendre integration of a matrix-valued function
/// over [x0, x1]. Refines panels until the per-entry estimate changes by at
/// most atol (plus a roundoff floor proportional to the accumulated scale).
CMatrix integrate_matrix(const std::function<CMatrix(double)>& f, double x0,
                         double x1, double atol);

std::vector<double> linspace(double lo, double hi, int count);

} // namespace gbdt

#endif
