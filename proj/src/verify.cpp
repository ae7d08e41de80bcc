/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gbdt/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace gbdt {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string grid_str(const std::vector<double>& xs) {
  if (xs.empty()) return "empty";
  return "x[" + fmt(xs.front()) + "," + fmt(xs.back()) + ";" + std::to_string(xs.size()) +
         "]";
}

struct Worst {
  double value = 0.0;
  std::string location = "-";

  void update(double v, const std::string& loc) {
    if (v > value || location == "-") {
      value = v;
      location = loc;
    }
  }
};

VerifyReport make_report(std::string id, std::string grid, const Worst& worst,
                         double threshold) {
  VerifyReport r;
  r.check_id = std::move(id);
  r.grid = std::move(grid);
  r.worst_residual = worst.value;
  r.threshold = threshold;
  r.pass = worst.value <= threshold;
  r.location = worst.location;
  return r;
}

CMatrix system_matrix(SystemKind kind, Complex z, const CMatrix& v) {
  const CMatrix j = kind.signature();
  if (kind.self_adjoint()) return kI * (z * j + j * v);
  return kI * z * j + j * v;
}

} // namespace

std::string VerifyReport::line() const {
  return check_id + "," + fmt(worst_residual) + "," + fmt(threshold) + "," +
         (pass ? "pass" : "fail") + "," + location;
}

std::vector<CMatrix> rk4_integrate(SystemKind kind, const PotentialFn& potential,
                                   Complex z, const CMatrix& y0,
                                   const std::vector<double>& x_grid, double max_step) {
  if (x_grid.empty()) fail(ErrorCode::InvalidArgument, "rk4_integrate: empty grid");
  if (!(max_step > 0.0) || max_step > 1e-3)
    fail(ErrorCode::InvalidArgument, "rk4_integrate: step must be in (0, 1e-3]");

  std::vector<CMatrix> out;
  out.reserve(x_grid.size());
  CMatrix y = y0;
  out.push_back(y);
  for (size_t i = 1; i < x_grid.size(); ++i) {
    const double a = x_grid[i - 1], b = x_grid[i];
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / max_step)));
    const double h = (b - a) / steps;
    double x = a;
    for (int s = 0; s < steps; ++s) {
      const CMatrix m0 = system_matrix(kind, z, potential(x));
      const CMatrix mh = system_matrix(kind, z, potential(x + 0.5 * h));
      const CMatrix m1 = system_matrix(kind, z, potential(x + h));
      const CMatrix k1 = m0 * y;
      const CMatrix k2 = mh * (y + 0.5 * h * k1);
      const CMatrix k3 = mh * (y + 0.5 * h * k2);
      const CMatrix k4 = m1 * (y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      x = a + (s + 1) * h;
    }
    if (!all_finite(y))
      fail(ErrorCode::Range, "rk4_integrate: trajectory diverged near x = " + fmt(b));
    out.push_back(y);
  }
  return out;
}

VerifyReport check_identity(const GbdtTriple& triple, const std::vector<double>& xs) {
  Worst worst;
  for (double x : xs) {
    const CMatrix pi = eval_pi(triple, x).pi();
    const CMatrix s = eval_s(triple, x, SMethod::Quadrature);
    const CMatrix rhs = kI * pi * triple.kind().signature_kappa() * pi.adjoint();
    const double resid =
        operator_norm(triple.a_mat() * s - s * triple.a_mat().adjoint() - rhs) /
        (1.0 + operator_norm(s));
    worst.update(resid, "x=" + fmt(x));
  }
  return make_report("identity", grid_str(xs), worst, 1e-9);
}

VerifyReport check_positivity(const GbdtTriple& triple, const std::vector<double>& xs) {
  Worst worst;
  for (double x : xs) {
    if (triple.kind().self_adjoint() && x < 0.0) continue;
    const CMatrix s = eval_s(triple, x, SMethod::Quadrature);
    const double min_eig = HermitianSolver(s).min_eigenvalue();
    worst.update(-min_eig, "x=" + fmt(x));
  }
  // Pass requires min eig strictly positive at every grid point.
  VerifyReport r = make_report("positivity", grid_str(xs), worst, 0.0);
  r.pass = worst.value < 0.0;
  return r;
}

VerifyReport check_monitors(const GbdtTriple& triple, const std::vector<double>& xs) {
  if (triple.kind().self_adjoint())
    fail(ErrorCode::InvalidArgument, "check_monitors applies to the skew kind only");
  Worst worst;
  worst.update(0.0, "-");
  auto monitor = [&](double x, bool forward) -> CMatrix {
    const double sgn = forward ? -1.0 : 1.0;
    const CMatrix el = mat_exp(sgn * kI * x * triple.a_mat());
    const CMatrix s = eval_s(triple, x, SMethod::Quadrature);
    return el * s * el.adjoint();
  };
  std::vector<double> fwd, bwd;
  for (double x : xs) (x >= 0.0 ? fwd : bwd).push_back(x);
  std::sort(fwd.begin(), fwd.end());
  std::sort(bwd.begin(), bwd.end());
  for (size_t i = 1; i < fwd.size(); ++i) {
    const CMatrix diff = monitor(fwd[i], true) - monitor(fwd[i - 1], true);
    const double viol = -HermitianSolver(0.5 * (diff + diff.adjoint())).min_eigenvalue();
    worst.update(viol, "x=" + fmt(fwd[i]));
  }
  for (size_t i = 1; i < bwd.size(); ++i) {
    const CMatrix diff = monitor(bwd[i], false) - monitor(bwd[i - 1], false);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (diff + diff.adjoint()));
    worst.update(es.eigenvalues().maxCoeff(), "x=" + fmt(bwd[i]));
  }
  return make_report("monitor_monotone", grid_str(xs), worst, 1e-9);
}

VerifyReport check_dual_ode(const GbdtTriple& triple, const std::vector<double>& xs) {
  const double h = 1e-5;
  const auto& seed = triple.realization.seed;
  Worst worst;
  for (double x : xs) {
    const PiValue pm = eval_pi(triple, x - h), pp = eval_pi(triple, x + h);
    const PiValue p0 = eval_pi(triple, x);
    const CMatrix d1 = (pp.lambda1 - pm.lambda1) / (2.0 * h);
    const CMatrix d2 = (pp.lambda2 - pm.lambda2) / (2.0 * h);
    const CMatrix v = seed.value(x);
    CMatrix rhs1, rhs2;
    if (triple.kind().self_adjoint()) {
      rhs1 = -kI * triple.a_mat() * p0.lambda1 + kI * p0.lambda2 * v.adjoint();
      rhs2 = kI * triple.a_mat() * p0.lambda2 - kI * p0.lambda1 * v;
    } else {
      rhs1 = -kI * triple.a_mat() * p0.lambda1 + p0.lambda2 * v.adjoint();
      rhs2 = kI * triple.a_mat() * p0.lambda2 - p0.lambda1 * v;
    }
    const double scale = 1.0 + std::max(operator_norm(rhs1), operator_norm(rhs2));
    const double resid =
        std::max(operator_norm(d1 - rhs1), operator_norm(d2 - rhs2)) / scale;
    worst.update(resid, "x=" + fmt(x));
  }
  return make_report("dual_ode", grid_str(xs), worst, 1e-6);
}

VerifyReport check_pispluss(const GbdtTriple& triple, const std::vector<double>& xs) {
  const double h = 1e-5;
  const CMatrix j = triple.kind().signature();
  Worst worst;
  auto f = [&](double x) -> CMatrix {
    const GbdtState st = eval_state(triple, x, SMethod::Quadrature);
    return st.s_solver.solve(st.pi()).adjoint();
  };
  for (double x : xs) {
    const CMatrix fm = f(x - h), fp = f(x + h), f0 = f(x);
    const CMatrix deriv = (fp - fm) / (2.0 * h);
    const GbdtState st = eval_state(triple, x, SMethod::Quadrature);
    const CMatrix vt = assemble_full_potential(eval_potential_block(triple, st));
    CMatrix rhs;
    if (triple.kind().self_adjoint())
      rhs = kI * j * f0 * triple.a_mat() + kI * vt * j * f0;
    else
      rhs = kI * j * f0 * triple.a_mat() + j * vt * f0;
    const double resid = operator_norm(deriv - rhs) / (1.0 + operator_norm(rhs));
    worst.update(resid, "x=" + fmt(x));
  }
  return make_report("pi_s_inverse_ode", grid_str(xs), worst, 1e-5);
}

VerifyReport check_pde(const GbdtTriple& triple, const std::vector<double>& xs,
                       const std::vector<double>& xis) {
  const double h = 1e-4;
  const CMatrix j = triple.kind().signature();
  const bool dirac_weyl = dirac_weyl_hypothesis_violation(triple).empty();
  Worst worst;

  CMatrix sigma2(2, 2), sigma3(2, 2);
  sigma2 << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  sigma3 << 1.0, 0.0, 0.0, -1.0;

  for (double x : xs) {
    const GbdtState stm = eval_state(triple, x - h, SMethod::Quadrature);
    const GbdtState st0 = eval_state(triple, x, SMethod::Quadrature);
    const GbdtState stp = eval_state(triple, x + h, SMethod::Quadrature);
    const CMatrix vt = assemble_full_potential(eval_potential_block(triple, st0));
    for (double xi : xis) {
      const CMatrix psi = dynamical_solution(triple, st0, xi);
      const CMatrix psi_x =
          (dynamical_solution(triple, stp, xi) - dynamical_solution(triple, stm, xi)) /
          (2.0 * h);
      const CMatrix psi_xi =
          (dynamical_solution(triple, st0, xi + h) - dynamical_solution(triple, st0, xi - h)) /
          (2.0 * h);
      CMatrix resid;
      if (triple.kind().self_adjoint())
        resid = psi_x + kI * j * (psi_xi + vt * psi);
      else
        resid = psi_x + kI * j * (psi_xi + kI * vt * psi);
      double worst_here = resid.cwiseAbs().maxCoeff();
      if (dirac_weyl) {
        const double omega = eval_omega(triple, x);
        const CMatrix dw =
            psi_x - kI * sigma3 * (-psi_xi + kI * omega * sigma2 * psi);
        worst_here = std::max(worst_here, dw.cwiseAbs().maxCoeff());
      }
      worst.update(worst_here, "x=" + fmt(x) + " xi=" + fmt(xi));
    }
  }
  return make_report("dynamical_pde", grid_str(xs) + " " + grid_str(xis), worst, 1e-5);
}

VerifyReport check_weyl_membership(const GbdtTriple& triple, Complex z, double x_max) {
  // Honor the exponent cap of the transfer-matrix evaluations.
  const double cap = (kMatExpNormCap - 10.0) /
                     std::max(1.0, triple.realization.q_norm + std::abs(triple.realization.seed.c));
  const double xm = std::min(x_max, cap);
  const auto partials = membership_partials(triple, z, xm);

  Worst worst;
  worst.update(0.0, "-");
  for (size_t i = 1; i < partials.size(); ++i) {
    const double drop = partials[i - 1].second - partials[i].second;
    if (drop > 0.0)
      worst.update(drop / (1.0 + partials.back().second),
                   "x=" + fmt(partials[i].first));
  }
  // Bounded: the last-quarter increment must be negligible.
  const double final_val = partials.back().second;
  size_t i34 = (partials.size() * 3) / 4;
  const double tail = (final_val - partials[i34].second) / (1.0 + final_val);
  worst.update(tail, "x=" + fmt(partials[i34].first) + "..");

  if (!triple.kind().self_adjoint()) {
    const CMatrix phi = weyl_via_y(triple, z).phi;
    for (double ell : {1.0, 5.0, 10.0}) {
      const double sup = gw_sup(triple, z, phi, std::min(ell, xm));
      if (!std::isfinite(sup)) worst.update(1.0, "gw ell=" + fmt(ell));
    }
  }
  std::ostringstream os;
  os << "z=" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i X="
     << fmt(xm);
  return make_report("weyl_membership", os.str(), worst, 1e-6);
}

VerifyReport check_oracle(const GbdtTriple& triple, Complex z,
                          const std::vector<double>& xs) {
  PotentialFn pot = [&](double x) { return eval_potential(triple, x); };
  const CMatrix u0 = transformed_fundamental(triple, xs.front(), z);
  const auto traj = rk4_integrate(triple.kind(), pot, z, u0, xs);
  Worst worst;
  for (size_t i = 0; i < xs.size(); ++i) {
    const CMatrix ut = transformed_fundamental(triple, xs[i], z);
    const double rel = operator_norm(ut - traj[i]) / operator_norm(ut);
    worst.update(rel, "x=" + fmt(xs[i]));
  }
  std::ostringstream os;
  os << grid_str(xs) << " z=" << z.real() << (z.imag() < 0 ? "-" : "+")
     << std::abs(z.imag()) << "i";
  return make_report("oracle_transformed", os.str(), worst, 1e-6);
}

std::vector<VerifyReport> run_all_checks(const GbdtTriple& triple,
                                         const std::vector<double>& xs,
                                         const std::vector<double>& xis,
                                         const std::vector<Complex>& zs,
                                         double x_max_membership) {
  std::vector<VerifyReport> reports;
  reports.push_back(check_identity(triple, xs));
  reports.push_back(check_positivity(triple, xs));
  if (!triple.kind().self_adjoint()) reports.push_back(check_monitors(triple, xs));
  reports.push_back(check_dual_ode(triple, xs));
  reports.push_back(check_pispluss(triple, xs));
  reports.push_back(check_pde(triple, xs, xis));
  const Complex z = zs.empty() ? weyl_test_grid(triple).front() : zs.front();
  reports.push_back(check_oracle(triple, z, {0.0, 0.5, 1.0, 2.0}));
  if (triple.s0_positive())
    reports.push_back(check_weyl_membership(triple, z, x_max_membership));
  return reports;
}

} // namespace gbdt
