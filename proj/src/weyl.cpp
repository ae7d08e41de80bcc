/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gbdt/weyl.hpp"

#include <cmath>
#include <sstream>

namespace gbdt {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string z_str(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Y(z) = (Theta) w_A(0,z) Z(z) [I;0], partitioned into p x p blocks.
std::pair<CMatrix, CMatrix> y_blocks(const GbdtTriple& triple, Complex z) {
  const int p = triple.p();
  const auto& seed = triple.realization.seed;
  CMatrix sel = CMatrix::Zero(2 * p, p);
  sel.topRows(p) = CMatrix::Identity(p, p);
  CMatrix y = eval_transfer(triple, 0.0, z) * z_matrix(z, seed, triple.kind()) * sel;
  if (triple.kind().self_adjoint()) y = theta_matrix(p) * y;
  return {y.topRows(p), y.bottomRows(p)};
}

} // namespace

CMatrix theta_matrix(int p) {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix th(2 * p, 2 * p);
  th.topLeftCorner(p, p) = s * CMatrix::Identity(p, p);
  th.topRightCorner(p, p) = -s * CMatrix::Identity(p, p);
  th.bottomLeftCorner(p, p) = s * CMatrix::Identity(p, p);
  th.bottomRightCorner(p, p) = s * CMatrix::Identity(p, p);
  return th;
}

CMatrix lft_realize(const CMatrix& d, const CMatrix& c1, const CMatrix& c2,
                    const CMatrix& b, const CMatrix& a, Complex z) {
  const Eigen::Index p = d.rows(), n = a.rows();
  if (d.cols() != p || c1.rows() != p || c1.cols() != n || c2.rows() != p ||
      c2.cols() != n || b.rows() != n || b.cols() != p || a.cols() != n)
    fail(ErrorCode::Dimension, "lft_realize: inconsistent shapes");

  const CMatrix across = a - b * c1;
  Eigen::PartialPivLU<CMatrix> xlu(across - z * CMatrix::Identity(n, n));
  if (!(std::abs(xlu.determinant()) > 1e-14))
    fail(ErrorCode::Pole, "lft_realize: z = " + z_str(z) + " is a pole (A-cross - zI singular)");
  const CMatrix realized = d + (d * c1 - c2) * xlu.solve(b);

  // Cross-check through the quotient form.
  Eigen::PartialPivLU<CMatrix> alu(a - z * CMatrix::Identity(n, n));
  if (std::abs(alu.determinant()) > 1e-14) {
    const CMatrix rb = alu.solve(b);
    const CMatrix denom = CMatrix::Identity(p, p) - c1 * rb;
    Eigen::PartialPivLU<CMatrix> dlu(denom);
    if (!(std::abs(dlu.determinant()) > 1e-14))
      fail(ErrorCode::Singular,
           "lft_realize: I - C1 (A-zI)^{-1} B singular at z = " + z_str(z));
    const CMatrix quotient = (d - c2 * rb) * dlu.inverse();
    const double diff = operator_norm(quotient - realized);
    if (!(diff <= 1e-9 * (1.0 + operator_norm(realized))))
      fail(ErrorCode::Inconsistency,
           "lft_realize: the two evaluation routes disagree by " + std::to_string(diff) +
               " at z = " + z_str(z));
  }
  return realized;
}

WeylValue weyl_via_y(const GbdtTriple& triple, Complex z) {
  auto [y1, y2] = y_blocks(triple, z);
  Eigen::PartialPivLU<CMatrix> lu(y1);
  if (!(std::abs(lu.determinant()) > 1e-14))
    fail(ErrorCode::Singular, "weyl_via_y: Y1(z) is singular at z = " + z_str(z) +
                                  "; retry at a different z");
  CMatrix phi = y2 * lu.inverse();
  if (triple.kind().self_adjoint()) phi = kI * phi;
  return {z, std::move(phi), triple.kind(), WeylMethod::YQuotient};
}

WeylRealization build_weyl_realization(const GbdtTriple& triple, Complex z) {
  const auto& seed = triple.realization.seed;
  const int p = triple.p();
  const CMatrix l1 = triple.pi0.leftCols(p), l2 = triple.pi0.rightCols(p);
  const CMatrix s0inv = HermitianSolver(triple.s0).inverse();
  const Complex zeta = zeta_branch(z, seed, triple.kind());

  WeylRealization w;
  w.z = z;
  if (triple.kind().self_adjoint()) {
    w.h = zeta - z + seed.c;
    w.d = (seed.a + w.h) / std::sqrt(2.0) * CMatrix::Identity(p, p);
    w.b = seed.a * l1 + w.h * l2;
    w.c1 = kI / (seed.a - w.h) * (l1 + l2).adjoint() * s0inv;
    w.c2 = kI / std::sqrt(2.0) * (l1 - l2).adjoint() * s0inv;
  } else {
    w.h = z - seed.c - zeta;
    w.d = w.h * CMatrix::Identity(p, p);
    w.b = kI * seed.a * l1 + w.h * l2;
    w.c1 = (1.0 / seed.a) * l1.adjoint() * s0inv;
    w.c2 = kI * l2.adjoint() * s0inv;
  }
  w.across = triple.a_mat() - w.b * w.c1;
  return w;
}

WeylValue weyl_realization(const GbdtTriple& triple, Complex z) {
  const auto& seed = triple.realization.seed;
  const WeylRealization w = build_weyl_realization(triple, z);
  CMatrix core = lft_realize(w.d, w.c1, w.c2, w.b, triple.a_mat(), z);
  CMatrix phi;
  if (triple.kind().self_adjoint())
    phi = kI * std::sqrt(2.0) / (seed.a - w.h) * core;
  else
    phi = 1.0 / (kI * seed.a) * core;

  const WeylValue reference = weyl_via_y(triple, z);
  const double diff = operator_norm(phi - reference.phi);
  if (!(diff <= 1e-8 * (1.0 + operator_norm(phi))))
    fail(ErrorCode::Inconsistency,
         "weyl_realization: disagrees with the Y-quotient by " + std::to_string(diff) +
             " at z = " + z_str(z));
  return {z, std::move(phi), triple.kind(), WeylMethod::Realization};
}

double suggest_weyl_imag(const GbdtTriple& triple) {
  double m = triple.realization.q_norm + triple.a_norm + 1.0;
  auto well_conditioned = [&](double level) {
    for (double re = -5.0; re <= 5.0; re += 2.5) {
      try {
        auto [y1, y2] = y_blocks(triple, Complex(re, level + 1.0));
        (void)y2;
        Eigen::JacobiSVD<CMatrix> svd(y1);
        const double smin = svd.singularValues().tail(1)(0);
        const double smax = svd.singularValues()(0);
        if (!(smin > 0.0) || smax / smin > 1e8) return false;
      } catch (const Error&) {
        return false;
      }
    }
    return true;
  };
  while (m > 1.0 && well_conditioned(m / 2.0)) m /= 2.0;
  return m;
}

std::vector<Complex> weyl_test_grid(const GbdtTriple& triple) {
  const double im = suggest_weyl_imag(triple) + 1.0;
  std::vector<Complex> zs;
  for (double re : linspace(-5.0, 5.0, 10)) zs.emplace_back(re, im);
  return zs;
}

double membership_integrand(const GbdtTriple& triple, Complex z, const CMatrix& phi,
                            double x) {
  const int p = triple.p();
  CMatrix col(2 * p, p);
  if (triple.kind().self_adjoint()) {
    col.topRows(p) = CMatrix::Identity(p, p);
    col.bottomRows(p) = -kI * phi;
    col = theta_matrix(p).adjoint() * col;
  } else {
    col.topRows(p) = CMatrix::Identity(p, p);
    col.bottomRows(p) = phi;
  }
  const CMatrix w = normalized_fundamental(triple, x, z);
  return (w * col).squaredNorm();
}

double membership_integrand_stable(const GbdtTriple& triple, Complex z, double x) {
  const auto& seed = triple.realization.seed;
  const int p = triple.p();
  auto [y1, y2] = y_blocks(triple, z);
  (void)y2;
  Eigen::PartialPivLU<CMatrix> lu(y1);
  if (!(std::abs(lu.determinant()) > 1e-14))
    fail(ErrorCode::Singular, "membership: Y1(z) singular at z = " + z_str(z));

  const Complex zeta = zeta_branch(z, seed, triple.kind());
  const CMatrix zc1 = z_matrix(z, seed, triple.kind()).leftCols(p);
  // e^{icxj} acting on the block column.
  CMatrix ezc = zc1;
  ezc.topRows(p) *= std::exp(kI * seed.c * x);
  ezc.bottomRows(p) *= std::exp(-kI * seed.c * x);
  const CMatrix w = eval_transfer(triple, x, z);
  const CMatrix col = std::exp(kI * zeta * x) * (w * ezc) * lu.inverse();
  return col.squaredNorm();
}

std::vector<std::pair<double, double>> membership_partials(const GbdtTriple& triple,
                                                           Complex z, double x_max) {
  if (!(x_max > 0.0)) fail(ErrorCode::InvalidArgument, "membership_partials: x_max <= 0");
  // z-dependent pieces hoisted out of the integration loop.
  const auto& seed = triple.realization.seed;
  const int p = triple.p();
  auto [y1, y2] = y_blocks(triple, z);
  (void)y2;
  Eigen::PartialPivLU<CMatrix> lu(y1);
  if (!(std::abs(lu.determinant()) > 1e-14))
    fail(ErrorCode::Singular, "membership: Y1(z) singular at z = " + z_str(z));
  const CMatrix y1inv = lu.inverse();
  const Complex zeta = zeta_branch(z, seed, triple.kind());
  const CMatrix zc1 = z_matrix(z, seed, triple.kind()).leftCols(p);

  auto f = [&](double x) -> CMatrix {
    CMatrix ezc = zc1;
    ezc.topRows(p) *= std::exp(kI * seed.c * x);
    ezc.bottomRows(p) *= std::exp(-kI * seed.c * x);
    const CMatrix col =
        std::exp(kI * zeta * x) * (eval_transfer(triple, x, z) * ezc) * y1inv;
    CMatrix m(1, 1);
    m(0, 0) = col.squaredNorm();
    return m;
  };
  const int panels = std::max(4, static_cast<int>(std::ceil(x_max / 1.0)));
  std::vector<std::pair<double, double>> partials;
  partials.reserve(panels);
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = x_max * i / panels, b = x_max * (i + 1) / panels;
    acc += integrate_matrix(f, a, b, 1e-10)(0, 0).real();
    partials.emplace_back(b, acc);
  }
  return partials;
}

double gw_sup(const GbdtTriple& triple, Complex z, const CMatrix& phi, double ell) {
  const int p = triple.p();
  const auto& seed = triple.realization.seed;
  CMatrix col(2 * p, p);
  col.topRows(p) = CMatrix::Identity(p, p);
  col.bottomRows(p) = phi;
  // W(x,z) col = w_A(x,z) u(x,z) (Z^{-1} w_A(0,z)^{-1} col); the z-fixed tail
  // is computed once.
  const CMatrix zm = z_matrix(z, seed, triple.kind());
  const CMatrix w0 = eval_transfer(triple, 0.0, z);
  const CMatrix tail =
      zm.partialPivLu().solve(w0.partialPivLu().solve(col));
  double sup = 0.0;
  for (double x : linspace(0.0, ell, std::max(2, static_cast<int>(ell / 0.05) + 1))) {
    const CMatrix u = seed_fundamental(seed, triple.kind(), x, z);
    const CMatrix w = eval_transfer(triple, x, z) * u * tail;
    const double v = (std::exp(-kI * z * x) * w).norm();
    if (!std::isfinite(v))
      fail(ErrorCode::Range, "gw_sup: non-finite value at x = " + std::to_string(x));
    sup = std::max(sup, v);
  }
  return sup;
}

} // namespace gbdt
