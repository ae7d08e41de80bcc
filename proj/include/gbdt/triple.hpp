/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GBDT_TRIPLE_HPP
#define GBDT_TRIPLE_HPP

#include "gbdt/linalg.hpp"
#include "gbdt/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gbdt {

/// Seed potential v(x) = a e^{2icx} I_p with a != 0, c real.
/// Every consumer evaluates v through value()/scalar_value(); there is no
/// second evaluation path.
struct SeedPotential {
  Complex a;
  double c = 0.0;
  int p = 1;

  SeedPotential(Complex a_, double c_, int p_ = 1) : a(a_), c(c_), p(p_) {
    if (a == Complex(0.0, 0.0))
      fail(ErrorCode::InvalidArgument, "SeedPotential: a must be nonzero");
    if (p < 1) fail(ErrorCode::InvalidArgument, "SeedPotential: p must be >= 1");
  }

  Complex scalar_value(double x) const {
    return a * std::exp(Complex(0.0, 2.0 * c * x));
  }
  CMatrix value(double x) const {
    return scalar_value(x) * CMatrix::Identity(p, p);
  }
};

enum class RootBranch { Principal, Negated };

struct JordanBlock {
  Complex eigenvalue;
  int size = 1;
  RootBranch branch = RootBranch::Principal;
};

struct JordanSpec {
  std::vector<JordanBlock> blocks;
  std::optional<CMatrix> similarity; // A = E J E^{-1} when present

  int dim() const {
    int n = 0;
    for (const auto& b : blocks) n += b.size;
    return n;
  }
};

/// Dense A from a Jordan specification (similarity applied when present).
CMatrix jordan_to_dense(const JordanSpec& spec);

/// Commuting root per Jordan block: q0 = sqrt((lambda-c)^2 -+ |a|^2) with the
/// block's branch choice, remaining Toeplitz coefficients by matching shift-
/// matrix coefficients. Blocks are assembled block-diagonally; similarity E
/// conjugates the result.
CMatrix build_q_jordan(const JordanSpec& spec, const SeedPotential& seed,
                       SystemKind kind);

/// Generic commuting root via the principal square root of (A-cI)^2 -+ |a|^2.
/// Branch-cut failures propagate with a hint to use build_q_jordan.
CMatrix build_q_generic(const CMatrix& a_mat, const SeedPotential& seed,
                        SystemKind kind, RootBranch branch = RootBranch::Principal);

/// f3, f4 from f1, f2:
///   self-adjoint:  f3 =  (1/conj(a))(Q+A-cI) f1,  f4 = -(1/conj(a))(Q-A+cI) f2
///   skew:          same with prefactor i/conj(a)
std::pair<CMatrix, CMatrix> derive_f34(const CMatrix& q, const CMatrix& a_mat,
                                       const CMatrix& f1, const CMatrix& f2,
                                       const SeedPotential& seed, SystemKind kind);

/// The commuting root and block data giving closed-form Pi(x).
struct SeedRealization {
  SystemKind kind;
  SeedPotential seed;
  CMatrix a_mat; // the generalized matrix eigenvalue A (n x n)
  CMatrix q;     // commuting root
  CMatrix f1, f2, f3, f4;
  double q_norm = 0.0; // cached ||Q||
};

/// The data {A, S(0), Pi(0)} plus the realization it came from.
struct GbdtTriple {
  SeedRealization realization;
  CMatrix s0;  // Hermitian, identity residual validated
  CMatrix pi0; // [f1+f2, f3+f4]

  CVector a_eigs;              // cached sigma(A)
  bool spectra_disjoint = false; // sigma(A) vs sigma(A*)
  double s0_min_eig = 0.0;     // positivity report (not a requirement here)
  double a_norm = 0.0;

  int n() const { return static_cast<int>(realization.a_mat.rows()); }
  int p() const { return realization.seed.p; }
  SystemKind kind() const { return realization.kind; }
  const CMatrix& a_mat() const { return realization.a_mat; }
  bool s0_positive() const { return s0_min_eig > 0.0; }
};

/// Assembles and validates a triple. When s0 is omitted it is recovered as
/// the unique Hermitian solution of A S0 - S0 A* = i Pi0 j^kappa Pi0*, which
/// needs sigma(A) and sigma(A*) disjoint. A supplied s0 wins; when the
/// Sylvester solution also exists the two are cross-checked.
GbdtTriple assemble_triple(const CMatrix& a_mat, const CMatrix& q, const CMatrix& f1,
                           const CMatrix& f2, const SeedPotential& seed, SystemKind kind,
                           std::optional<CMatrix> s0 = std::nullopt);

/// Convenience: build Q from the Jordan spec, then assemble.
GbdtTriple assemble_triple_jordan(const JordanSpec& spec, const CMatrix& f1,
                                  const CMatrix& f2, const SeedPotential& seed,
                                  SystemKind kind,
                                  std::optional<CMatrix> s0 = std::nullopt);

/// Empty string when the realness hypotheses of the Dirac-Weyl reduction hold
/// (p=1, skew, c=0, ia real, iA real, iQ real, S0 real, f1/f2 real);
/// otherwise the name of the first violated condition.
std::string dirac_weyl_hypothesis_violation(const GbdtTriple& triple);

} // namespace gbdt

#endif
