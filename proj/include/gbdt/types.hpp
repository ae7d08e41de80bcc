/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GBDT_TYPES_HPP
#define GBDT_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace gbdt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

enum class ErrorCode {
  InvalidArgument,
  Dimension,
  BranchCut,          // eigenvalue on the closed negative real axis
  DegenerateSpectrum, // determinant condition on (A-cI)^2 -+ |a|^2 violated
  SpectralCollision,  // Sylvester: shared eigenvalue between A and B
  Range,              // exponent / coordinate beyond the documented cap
  Singular,
  IllConditioned,
  Pole,               // z hits sigma(A) or sigma(A-cross)
  Hypotheses,         // Dirac-Weyl realness hypotheses violated
  Normalization,      // singular Z(z) or w_A(0,z)
  Inconsistency,      // internal cross-check disagreement
  NonConvergence,
  Parse,
  Io,
  UnknownName,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

const char* error_code_name(ErrorCode code) noexcept;

enum class DiracKind { SelfAdjoint, SkewSelfAdjoint };

/// Which Dirac family a triple belongs to; carries the block size p.
struct SystemKind {
  DiracKind kind = DiracKind::SelfAdjoint;
  int p = 1;

  int kappa() const noexcept { return kind == DiracKind::SelfAdjoint ? 1 : 0; }
  bool self_adjoint() const noexcept { return kind == DiracKind::SelfAdjoint; }

  /// j = diag(I_p, -I_p)
  CMatrix signature() const {
    CMatrix j = CMatrix::Identity(2 * p, 2 * p);
    j.bottomRightCorner(p, p) *= -1.0;
    return j;
  }
  /// j^kappa (identity in the skew case)
  CMatrix signature_kappa() const {
    return self_adjoint() ? signature() : CMatrix::Identity(2 * p, 2 * p);
  }
  /// Sign s in Q^2 = (A-cI)^2 + s*|a|^2*I: -1 self-adjoint, +1 skew.
  double shift_sign() const noexcept { return self_adjoint() ? -1.0 : 1.0; }
};

inline SystemKind self_adjoint(int p = 1) { return {DiracKind::SelfAdjoint, p}; }
inline SystemKind skew_self_adjoint(int p = 1) { return {DiracKind::SkewSelfAdjoint, p}; }

} // namespace gbdt

#endif
