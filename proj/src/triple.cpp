/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gbdt/triple.hpp"

#include <cmath>
#include <sstream>

namespace gbdt {

namespace {

std::string cplx_str(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Upper triangular Toeplitz block for one Jordan cell.
CMatrix q_block(const JordanBlock& block, const SeedPotential& seed, SystemKind kind) {
  const int k = block.size;
  if (k < 1) fail(ErrorCode::InvalidArgument, "build_q_jordan: block size must be >= 1");
  const Complex lc = block.eigenvalue - seed.c;
  const Complex t0 = lc * lc + kind.shift_sign() * std::norm(seed.a);
  const double scale = 1.0 + std::abs(lc) * std::abs(lc) + std::norm(seed.a);
  if (std::abs(t0) <= 1e-14 * scale)
    fail(ErrorCode::DegenerateSpectrum,
         "build_q_jordan: (lambda-c)^2 " +
             std::string(kind.self_adjoint() ? "-" : "+") + " |a|^2 vanishes at lambda = " +
             cplx_str(block.eigenvalue) + "; the determinant condition fails");

  Complex q0 = std::sqrt(t0);
  if (block.branch == RootBranch::Negated) q0 = -q0;

  // Target (A - cI)^2 + s|a|^2 I = t0 I + t1 S1 + t2 S2 within the block.
  std::vector<Complex> t(k, Complex(0.0, 0.0));
  t[0] = t0;
  if (k > 1) t[1] = 2.0 * lc;
  if (k > 2) t[2] = 1.0;

  std::vector<Complex> qc(k);
  qc[0] = q0;
  for (int i = 1; i < k; ++i) {
    Complex acc = t[i];
    for (int j = 1; j < i; ++j) acc -= qc[j] * qc[i - j];
    qc[i] = acc / (2.0 * q0);
  }

  CMatrix q = CMatrix::Zero(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) q(i, j) = qc[j - i];
  return q;
}

void check_shape(const CMatrix& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols)
    fail(ErrorCode::Dimension, std::string(name) + ": expected " + std::to_string(rows) +
                                   "x" + std::to_string(cols) + ", got " +
                                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

bool imag_small(const CMatrix& m, double tol) {
  return m.imag().cwiseAbs().maxCoeff() <= tol;
}

} // namespace

CMatrix jordan_to_dense(const JordanSpec& spec) {
  const int n = spec.dim();
  if (n == 0) fail(ErrorCode::InvalidArgument, "jordan_to_dense: empty spec");
  CMatrix j = CMatrix::Zero(n, n);
  int at = 0;
  for (const auto& b : spec.blocks) {
    for (int i = 0; i < b.size; ++i) {
      j(at + i, at + i) = b.eigenvalue;
      if (i + 1 < b.size) j(at + i, at + i + 1) = 1.0;
    }
    at += b.size;
  }
  if (!spec.similarity) return j;
  const CMatrix& e = *spec.similarity;
  check_shape(e, n, n, "jordan_to_dense similarity");
  Eigen::PartialPivLU<CMatrix> lu(e);
  if (std::abs(lu.determinant()) <= 1e-14)
    fail(ErrorCode::Singular, "jordan_to_dense: similarity matrix is singular");
  return e * j * lu.inverse();
}

CMatrix build_q_jordan(const JordanSpec& spec, const SeedPotential& seed, SystemKind kind) {
  const int n = spec.dim();
  if (n == 0) fail(ErrorCode::InvalidArgument, "build_q_jordan: empty spec");
  CMatrix q = CMatrix::Zero(n, n);
  int at = 0;
  for (const auto& b : spec.blocks) {
    q.block(at, at, b.size, b.size) = q_block(b, seed, kind);
    at += b.size;
  }
  if (!spec.similarity) return q;
  const CMatrix& e = *spec.similarity;
  check_shape(e, n, n, "build_q_jordan similarity");
  return e * q * Eigen::PartialPivLU<CMatrix>(e).inverse();
}

namespace {

// Square root of a diagonalizable matrix with the branch continuous from the
// upper half-plane (negative reals map to +i sqrt|.|). Covers semisimple
// spectra that the strict principal branch rejects.
CMatrix sqrt_diagonalizable_upper(const CMatrix& target) {
  Eigen::ComplexEigenSolver<CMatrix> es(target);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::Internal, "build_q_generic: eigendecomposition failed");
  const CMatrix& v = es.eigenvectors();
  Eigen::JacobiSVD<CMatrix> svd(v);
  const double smin = svd.singularValues().tail(1)(0);
  if (!(smin > 0.0) || svd.singularValues()(0) / smin > 1e8)
    fail(ErrorCode::BranchCut,
         "build_q_generic: the target matrix has spectrum on the closed negative real "
         "axis and is not (safely) diagonalizable; build_q_jordan with an explicit "
         "branch per block handles this spectrum");
  CVector roots = es.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    Complex lam = roots(i);
    if (lam.imag() == 0.0) lam = Complex(lam.real(), +0.0);
    roots(i) = std::sqrt(lam);
  }
  const CMatrix q = v * roots.asDiagonal() * v.partialPivLu().inverse();
  if (operator_norm(q * q - target) > 1e-9 * (1.0 + operator_norm(target)))
    fail(ErrorCode::BranchCut,
         "build_q_generic: diagonalizable square-root fallback lost accuracy; use "
         "build_q_jordan with an explicit branch per block");
  return q;
}

} // namespace

CMatrix build_q_generic(const CMatrix& a_mat, const SeedPotential& seed, SystemKind kind,
                        RootBranch branch) {
  if (a_mat.rows() != a_mat.cols())
    fail(ErrorCode::Dimension, "build_q_generic: A must be square");
  const Eigen::Index n = a_mat.rows();
  const CMatrix shifted = a_mat - seed.c * CMatrix::Identity(n, n);
  const CMatrix target =
      shifted * shifted + kind.shift_sign() * std::norm(seed.a) * CMatrix::Identity(n, n);

  const CVector teigs = eigenvalues(target);
  const double tscale = 1.0 + operator_norm(target);
  for (Eigen::Index i = 0; i < teigs.size(); ++i)
    if (std::abs(teigs(i)) <= 1e-12 * tscale)
      fail(ErrorCode::DegenerateSpectrum,
           "build_q_generic: (A-cI)^2 " + std::string(kind.self_adjoint() ? "-" : "+") +
               " |a|^2 I is singular; the determinant condition fails");

  CMatrix q;
  try {
    q = principal_sqrt(target);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BranchCut) throw;
    // Strictly negative but semisimple spectrum: continue the branch from
    // above. Defective negative spectra are genuinely out of reach here.
    q = sqrt_diagonalizable_upper(target);
  }
  if (branch == RootBranch::Negated) q = -q;

  const double comm = operator_norm(a_mat * q - q * a_mat);
  const double scale = (1.0 + operator_norm(a_mat)) * (1.0 + operator_norm(q));
  if (!(comm <= 1e-9 * scale))
    fail(ErrorCode::Internal,
         "build_q_generic: Q does not commute with A (residual " + std::to_string(comm) + ")");
  return q;
}

std::pair<CMatrix, CMatrix> derive_f34(const CMatrix& q, const CMatrix& a_mat,
                                       const CMatrix& f1, const CMatrix& f2,
                                       const SeedPotential& seed, SystemKind kind) {
  const Eigen::Index n = a_mat.rows();
  check_shape(q, n, n, "derive_f34 Q");
  check_shape(f1, n, seed.p, "derive_f34 f1");
  check_shape(f2, n, seed.p, "derive_f34 f2");
  const Complex pref = (kind.self_adjoint() ? Complex(1.0, 0.0) : Complex(0.0, 1.0)) /
                       std::conj(seed.a);
  const CMatrix ci = seed.c * CMatrix::Identity(n, n);
  CMatrix f3 = pref * ((q + a_mat - ci) * f1);
  CMatrix f4 = -pref * ((q - a_mat + ci) * f2);
  return {std::move(f3), std::move(f4)};
}

GbdtTriple assemble_triple(const CMatrix& a_mat, const CMatrix& q, const CMatrix& f1,
                           const CMatrix& f2, const SeedPotential& seed, SystemKind kind,
                           std::optional<CMatrix> s0_opt) {
  if (a_mat.rows() != a_mat.cols())
    fail(ErrorCode::Dimension, "assemble_triple: A must be square");
  const Eigen::Index n = a_mat.rows();
  const int p = seed.p;
  check_shape(q, n, n, "assemble_triple Q");
  check_shape(f1, n, p, "assemble_triple f1");
  check_shape(f2, n, p, "assemble_triple f2");

  // Q must commute with A and satisfy its defining quadratic relation.
  const double qscale = (1.0 + operator_norm(a_mat)) * (1.0 + operator_norm(q));
  if (operator_norm(a_mat * q - q * a_mat) > 1e-9 * qscale)
    fail(ErrorCode::InvalidArgument, "assemble_triple: A and Q do not commute");
  const CMatrix shifted = a_mat - seed.c * CMatrix::Identity(n, n);
  const CMatrix target =
      shifted * shifted + kind.shift_sign() * std::norm(seed.a) * CMatrix::Identity(n, n);
  if (operator_norm(q * q - target) > 1e-9 * (1.0 + operator_norm(target)))
    fail(ErrorCode::InvalidArgument,
         "assemble_triple: Q^2 != (A-cI)^2 " +
             std::string(kind.self_adjoint() ? "-" : "+") + " |a|^2 I");

  auto [f3, f4] = derive_f34(q, a_mat, f1, f2, seed, kind);

  GbdtTriple triple{
      SeedRealization{kind, seed, a_mat, q, f1, f2, f3, f4, operator_norm(q)},
      CMatrix{},
      CMatrix{},
      CVector{},
      false,
      0.0,
      0.0};
  triple.pi0 = CMatrix(n, 2 * p);
  triple.pi0.leftCols(p) = f1 + f2;
  triple.pi0.rightCols(p) = f3 + f4;

  triple.a_eigs = eigenvalues(a_mat);
  triple.a_norm = operator_norm(a_mat);
  double min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      min_gap = std::min(min_gap,
                         std::abs(triple.a_eigs(i) - std::conj(triple.a_eigs(k))));
  triple.spectra_disjoint = min_gap > kSylvesterGapTol * (1.0 + triple.a_norm);

  const CMatrix rhs =
      Complex(0.0, 1.0) * triple.pi0 * kind.signature_kappa() * triple.pi0.adjoint();

  std::optional<CMatrix> computed;
  if (triple.spectra_disjoint) {
    CMatrix s = solve_sylvester(a_mat, a_mat.adjoint(), rhs);
    s = 0.5 * (s + s.adjoint()); // the exact solution is Hermitian
    computed = std::move(s);
  }

  if (s0_opt) {
    const CMatrix& s0 = *s0_opt;
    check_shape(s0, n, n, "assemble_triple S0");
    if (operator_norm(s0 - s0.adjoint()) > 1e-12 * (1.0 + operator_norm(s0)))
      fail(ErrorCode::InvalidArgument, "assemble_triple: supplied S0 is not Hermitian");
    const double resid = operator_norm(a_mat * s0 - s0 * a_mat.adjoint() - rhs);
    if (!(resid <= 1e-10 * (1.0 + operator_norm(s0))))
      fail(ErrorCode::InvalidArgument,
           "assemble_triple: supplied S0 violates the defining identity (residual " +
               std::to_string(resid) + ")");
    // The supplied value wins; warn-level cross-check against the computed one.
    if (computed) {
      const double diff = operator_norm(s0 - *computed);
      if (diff > 1e-8 * (1.0 + operator_norm(s0)))
        fail(ErrorCode::Inconsistency,
             "assemble_triple: supplied S0 differs from the Sylvester solution by " +
                 std::to_string(diff) + " although the solution is unique");
    }
    triple.s0 = s0;
  } else {
    if (!computed)
      fail(ErrorCode::SpectralCollision,
           "assemble_triple: sigma(A) meets sigma(A*), S0 is not unique; supply S0 "
           "explicitly");
    triple.s0 = *computed;
    const double resid =
        operator_norm(a_mat * triple.s0 - triple.s0 * a_mat.adjoint() - rhs);
    if (!(resid <= 1e-10 * (1.0 + operator_norm(triple.s0))))
      fail(ErrorCode::Internal, "assemble_triple: recovered S0 residual " +
                                    std::to_string(resid) + " above tolerance");
  }

  triple.s0_min_eig = HermitianSolver(triple.s0).min_eigenvalue();
  return triple;
}

GbdtTriple assemble_triple_jordan(const JordanSpec& spec, const CMatrix& f1,
                                  const CMatrix& f2, const SeedPotential& seed,
                                  SystemKind kind, std::optional<CMatrix> s0) {
  const CMatrix a_mat = jordan_to_dense(spec);
  const CMatrix q = build_q_jordan(spec, seed, kind);
  return assemble_triple(a_mat, q, f1, f2, seed, kind, std::move(s0));
}

std::string dirac_weyl_hypothesis_violation(const GbdtTriple& triple) {
  constexpr double tol = 1e-12;
  const auto& r = triple.realization;
  if (r.kind.kind != DiracKind::SkewSelfAdjoint) return "kind is not skew-self-adjoint";
  if (r.seed.p != 1) return "p != 1";
  if (std::abs(r.seed.c) > tol) return "c != 0";
  const Complex ia = Complex(0.0, 1.0) * r.seed.a;
  if (std::abs(ia.imag()) > tol * (1.0 + std::abs(ia))) return "i*a is not real";
  const double scale_a = 1.0 + operator_norm(r.a_mat);
  if (!imag_small(Complex(0.0, 1.0) * r.a_mat, tol * scale_a)) return "i*A is not real";
  const double scale_q = 1.0 + operator_norm(r.q);
  if (!imag_small(Complex(0.0, 1.0) * r.q, tol * scale_q)) return "i*Q is not real";
  const double scale_s = 1.0 + operator_norm(triple.s0);
  if (!imag_small(triple.s0, tol * scale_s)) return "S(0) is not real";
  if (!imag_small(r.f1, tol * (1.0 + operator_norm(r.f1)))) return "f1 is not real";
  if (!imag_small(r.f2, tol * (1.0 + operator_norm(r.f2)))) return "f2 is not real";
  return {};
}

} // namespace gbdt
