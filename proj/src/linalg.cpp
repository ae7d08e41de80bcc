/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gbdt/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gbdt {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::BranchCut: return "branch_cut";
    case ErrorCode::DegenerateSpectrum: return "degenerate_spectrum";
    case ErrorCode::SpectralCollision: return "spectral_collision";
    case ErrorCode::Range: return "range";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::IllConditioned: return "ill_conditioned";
    case ErrorCode::Pole: return "pole";
    case ErrorCode::Hypotheses: return "hypotheses";
    case ErrorCode::Normalization: return "normalization";
    case ErrorCode::Inconsistency: return "inconsistency";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
    case ErrorCode::UnknownName: return "unknown_name";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

namespace {

void require_square(const CMatrix& m, const char* who) {
  if (m.rows() != m.cols())
    fail(ErrorCode::Dimension, std::string(who) + ": matrix must be square, got " +
                                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

std::string cplx_str(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

} // namespace

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

CVector eigenvalues(const CMatrix& m) {
  require_square(m, "eigenvalues");
  Eigen::ComplexEigenSolver<CMatrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::Internal, "eigenvalue computation did not converge");
  return es.eigenvalues();
}

CMatrix mat_exp(const CMatrix& m) {
  require_square(m, "mat_exp");
  const double nrm = operator_norm(m);
  if (!(nrm <= kMatExpNormCap))
    fail(ErrorCode::Range, "mat_exp: ||M|| = " + std::to_string(nrm) +
                               " exceeds the cap " + std::to_string(kMatExpNormCap));
  CMatrix e = m.exp();
  if (!all_finite(e))
    fail(ErrorCode::Range, "mat_exp: non-finite entries in the result");
  return e;
}

CMatrix principal_sqrt(const CMatrix& m) {
  require_square(m, "principal_sqrt");
  const double scale = 1.0 + operator_norm(m);
  const CVector eig = eigenvalues(m);
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    const Complex lam = eig(i);
    const bool on_cut =
        (lam.real() <= 0.0 && std::abs(lam.imag()) <= 1e-12 * scale) ||
        std::abs(lam) <= 1e-14 * scale;
    if (on_cut)
      fail(ErrorCode::BranchCut,
           "principal_sqrt: eigenvalue " + cplx_str(lam) +
               " lies on the closed negative real axis; the principal branch is "
               "undefined (use the Jordan-recursion path or shift parameters)");
  }
  CMatrix x = m.sqrt();
  const double resid = operator_norm(x * x - m);
  if (!(resid <= 1e-10 * scale))
    fail(ErrorCode::Internal,
         "principal_sqrt: residual " + std::to_string(resid) + " above tolerance");
  return x;
}

CMatrix solve_sylvester(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
  require_square(a, "solve_sylvester");
  require_square(b, "solve_sylvester");
  const Eigen::Index n = a.rows(), m = b.rows();
  if (c.rows() != n || c.cols() != m)
    fail(ErrorCode::Dimension, "solve_sylvester: C must be " + std::to_string(n) + "x" +
                                   std::to_string(m));

  Eigen::ComplexSchur<CMatrix> sa(a, /*computeU=*/true);
  Eigen::ComplexSchur<CMatrix> sb(b, /*computeU=*/true);
  if (sa.info() != Eigen::Success || sb.info() != Eigen::Success)
    fail(ErrorCode::Internal, "solve_sylvester: Schur decomposition failed");
  const CMatrix& t = sa.matrixT();
  const CMatrix& r = sb.matrixT();
  const CMatrix& u = sa.matrixU();
  const CMatrix& v = sb.matrixU();

  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < m; ++k) {
      const Complex alpha = t(i, i), beta = r(k, k);
      if (std::abs(alpha - beta) <=
          kSylvesterGapTol * (1.0 + std::abs(alpha) + std::abs(beta)))
        fail(ErrorCode::SpectralCollision,
             "solve_sylvester: eigenvalue " + cplx_str(alpha) + " of A collides with " +
                 cplx_str(beta) + " of B (relative gap below " +
                 std::to_string(kSylvesterGapTol) + ")");
    }

  // T Y - Y R = F, solve column by column (R upper triangular).
  CMatrix f = u.adjoint() * c * v;
  CMatrix y = CMatrix::Zero(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    CVector rhs = f.col(k);
    for (Eigen::Index j = 0; j < k; ++j) rhs += y.col(j) * r(j, k);
    CMatrix tk = t;
    tk.diagonal().array() -= r(k, k);
    y.col(k) = tk.triangularView<Eigen::Upper>().solve(rhs);
  }
  CMatrix x = u * y * v.adjoint();
  if (!all_finite(x))
    fail(ErrorCode::Internal, "solve_sylvester: non-finite entries in the solution");
  return x;
}

HermitianSolver::HermitianSolver(const CMatrix& s) {
  require_square(s, "HermitianSolver");
  const double herm = operator_norm(s - s.adjoint());
  if (herm > 1e-9 * (1.0 + operator_norm(s)))
    fail(ErrorCode::InvalidArgument, "HermitianSolver: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::Internal, "HermitianSolver: eigendecomposition failed");
  eigs_ = es.eigenvalues();
  vecs_ = es.eigenvectors();
  const double amax = eigs_.cwiseAbs().maxCoeff();
  const double amin = eigs_.cwiseAbs().minCoeff();
  condition_ = amin == 0.0 ? std::numeric_limits<double>::infinity() : amax / amin;
  min_eig_ = eigs_.minCoeff();
}

CMatrix HermitianSolver::solve(const CMatrix& rhs) const {
  if (rhs.rows() != vecs_.rows())
    fail(ErrorCode::Dimension, "HermitianSolver::solve: shape mismatch");
  if (!(condition_ <= kConditionCap))
    fail(ErrorCode::IllConditioned,
         "HermitianSolver: estimated condition " + std::to_string(condition_) +
             " exceeds the cap 1e12 (S(x) is numerically singular; check that S(0) > 0)");
  CMatrix w = vecs_.adjoint() * rhs;
  for (Eigen::Index i = 0; i < eigs_.size(); ++i) w.row(i) /= eigs_(i);
  return vecs_ * w;
}

CMatrix HermitianSolver::inverse() const {
  return solve(CMatrix::Identity(vecs_.rows(), vecs_.rows()));
}

namespace {

// 20-point Gauss-Legendre rule on [-1, 1].
constexpr int kGlPoints = 20;
constexpr double kGlNodes[kGlPoints][2] = {
    {-0.99312859918509492479, 0.017614007139152118312},
    {-0.96397192727791379127, 0.040601429800386941331},
    {-0.91223442825132590587, 0.06267204833410906357},
    {-0.83911697182221882339, 0.083276741576704748725},
    {-0.74633190646015079261, 0.10193011981724043504},
    {-0.63605368072651502545, 0.11819453196151841731},
    {-0.510867001950827098, 0.1316886384491766269},
    {-0.37370608871541956067, 0.14209610931838205133},
    {-0.22778585114164507808, 0.14917298647260374679},
    {-0.076526521133497333755, 0.1527533871307258507},
    {0.076526521133497333755, 0.1527533871307258507},
    {0.22778585114164507808, 0.14917298647260374679},
    {0.37370608871541956067, 0.14209610931838205133},
    {0.510867001950827098, 0.1316886384491766269},
    {0.63605368072651502545, 0.11819453196151841731},
    {0.74633190646015079261, 0.10193011981724043504},
    {0.83911697182221882339, 0.083276741576704748725},
    {0.91223442825132590587, 0.06267204833410906357},
    {0.96397192727791379127, 0.040601429800386941331},
    {0.99312859918509492479, 0.017614007139152118312},
};

CMatrix gl_panel(const std::function<CMatrix(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  CMatrix acc = half * kGlNodes[0][1] * f(mid + half * kGlNodes[0][0]);
  for (int i = 1; i < kGlPoints; ++i)
    acc += half * kGlNodes[i][1] * f(mid + half * kGlNodes[i][0]);
  return acc;
}

CMatrix integrate_adaptive(const std::function<CMatrix(double)>& f, double a, double b,
                           const CMatrix& whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  CMatrix left = gl_panel(f, a, mid);
  CMatrix right = gl_panel(f, mid, b);
  CMatrix refined = left + right;
  const double diff = (refined - whole).cwiseAbs().maxCoeff();
  // Noise floor scales with the panel magnitude: the integrand itself (matrix
  // exponentials) carries a few ulps of evaluation error, and the two
  // estimates sample it at different nodes.
  const double floor =
      5e-13 * std::max(refined.cwiseAbs().maxCoeff(), whole.cwiseAbs().maxCoeff());
  if (diff <= std::max(tol, floor)) return refined;
  if (depth >= 14)
    fail(ErrorCode::NonConvergence,
         "integrate_matrix: adaptive refinement did not converge on [" +
             std::to_string(a) + ", " + std::to_string(b) + "]");
  return integrate_adaptive(f, a, mid, left, tol, depth + 1) +
         integrate_adaptive(f, mid, b, right, tol, depth + 1);
}

} // namespace

CMatrix integrate_matrix(const std::function<CMatrix(double)>& f, double x0, double x1,
                         double atol) {
  if (x0 == x1) {
    CMatrix probe = f(x0);
    return CMatrix::Zero(probe.rows(), probe.cols());
  }
  // Fixed initial panels of length <= 0.5, each refined adaptively.
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(x1 - x0) / 0.5)));
  const double step = (x1 - x0) / panels;
  CMatrix acc;
  for (int i = 0; i < panels; ++i) {
    const double a = x0 + i * step, b = x0 + (i + 1) * step;
    CMatrix whole = gl_panel(f, a, b);
    CMatrix part = integrate_adaptive(f, a, b, whole, atol / panels, 0);
    acc = (i == 0) ? part : CMatrix(acc + part);
  }
  if (!all_finite(acc))
    fail(ErrorCode::Range, "integrate_matrix: non-finite integrand values");
  return acc;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "linspace: count must be >= 1");
  std::vector<double> xs(count);
  if (count == 1) {
    xs[0] = lo;
    return xs;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) xs[i] = lo + step * i;
  xs.back() = hi;
  return xs;
}

} // namespace gbdt
