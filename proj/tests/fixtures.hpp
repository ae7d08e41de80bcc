/**
 * This code is part of gbdt-dirac.
 *
 * Licensed under the Apache License, Version 2.0. You may obtain a copy of
 * this license at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GBDT_TESTS_FIXTURES_HPP
#define GBDT_TESTS_FIXTURES_HPP

#include "gbdt/scenario.hpp"

#include <cmath>

namespace gbdt::fixtures {

/// Steplike family parameters shared by the n=1 skew example.
struct SteplikeParams {
  double r = 1.0;
  double lambda = 2.0;
  double d = 1.0;
  double mu() const { return std::sqrt(lambda * lambda - r * r); }
};

/// n=1 skew triple: a=ir, A=i*lambda, f1=d, f2=1, Q=i*mu.
inline GbdtTriple steplike_triple(const SteplikeParams& prm = {}) {
  const SeedPotential seed(Complex(0.0, prm.r), 0.0, 1);
  CMatrix a(1, 1), q(1, 1), f1(1, 1), f2(1, 1);
  a(0, 0) = Complex(0.0, prm.lambda);
  q(0, 0) = Complex(0.0, prm.mu());
  f1(0, 0) = prm.d;
  f2(0, 0) = 1.0;
  return assemble_triple(a, q, f1, f2, seed, skew_self_adjoint(1));
}

/// n=2 skew triple with a non-diagonalizable generalized eigenvalue:
/// a=ir, A=i[[lambda,b],[0,lambda]], f1=[d;0], f2=[0;1].
struct GrowthParams {
  double r = 1.0;
  double lambda = 2.0;
  double b = 1.0;
  double d = 1.0;
  double mu() const { return std::sqrt(lambda * lambda - r * r); }
};

inline GbdtTriple growth_triple(const GrowthParams& prm = {}) {
  const SeedPotential seed(Complex(0.0, prm.r), 0.0, 1);
  const Complex i(0.0, 1.0);
  CMatrix a(2, 2), q(2, 2);
  a << i * prm.lambda, i * prm.b, 0.0, i * prm.lambda;
  q << i * prm.mu(), i * prm.b * prm.lambda / prm.mu(), 0.0, i * prm.mu();
  CMatrix f1 = CMatrix::Zero(2, 1), f2 = CMatrix::Zero(2, 1);
  f1(0, 0) = prm.d;
  f2(1, 0) = 1.0;
  return assemble_triple(a, q, f1, f2, seed, skew_self_adjoint(1));
}

/// Closed forms of the growth example, used as frozen oracles.
inline double growth_s22(const GrowthParams& p, double x) {
  const double mu = p.mu();
  return (1.0 / (2.0 * p.lambda)) * (1.0 + std::pow((mu - p.lambda) / p.r, 2)) *
         std::exp(2.0 * mu * x);
}
inline double growth_s12(const GrowthParams& p, double x) {
  const double mu = p.mu(), lm = mu - p.lambda;
  return (1.0 / (2.0 * p.lambda)) *
         ((p.b * p.lambda / mu) * (1.0 + lm * lm / (p.r * p.r)) * x * std::exp(2.0 * mu * x) -
          p.b *
              ((lm * lm / (p.r * p.r)) * (1.0 / mu + 1.0 / (2.0 * p.lambda)) +
               1.0 / (2.0 * p.lambda)) *
              std::exp(2.0 * mu * x) +
          2.0 * p.d);
}
inline double growth_s11(const GrowthParams& p, double x) {
  const double mu = p.mu(), lm = mu - p.lambda, r2 = p.r * p.r;
  const double e2 = std::exp(2.0 * mu * x);
  const double t1 =
      std::pow(p.b * p.lambda / mu, 2) * (1.0 + lm * lm / r2) * x * x * e2;
  const double t2 = -(p.b * p.b / mu) *
                    ((2.0 * p.lambda / mu + 1.0) * lm * lm / r2 + 1.0) * x * e2;
  const double t3 = p.b * p.b *
                    ((lm * lm / r2) *
                         (1.0 / (mu * mu) + 1.0 / (p.lambda * mu) +
                          1.0 / (2.0 * p.lambda * p.lambda)) +
                     1.0 / (2.0 * p.lambda * p.lambda)) *
                    e2;
  const double t4 = 4.0 * p.b * p.d * (p.lambda / mu) * x -
                    2.0 * p.b * p.d * (1.0 / mu + 1.0 / p.lambda) +
                    p.d * p.d * (1.0 + std::pow(mu + p.lambda, 2) / r2) *
                        std::exp(-2.0 * mu * x);
  return (t1 + t2 + t3 + t4) / (2.0 * p.lambda);
}
inline double growth_det(const GrowthParams& p, double x) {
  const double mu = p.mu(), lm = mu - p.lambda, r2 = p.r * p.r;
  const double l2 = p.lambda * p.lambda;
  return (1.0 / (4.0 * l2)) *
         (p.b * p.b *
              ((1.0 / (4.0 * l2)) * (std::pow(lm, 4) / (r2 * r2) + 1.0) +
               (lm * lm / r2) * (1.0 / (mu * mu) + 1.0 / (2.0 * l2))) *
              std::exp(4.0 * mu * x) +
          (2.0 * p.b * p.d / mu) * (lm * lm / r2 - 1.0) * std::exp(2.0 * mu * x) +
          4.0 * p.d * p.d * mu * mu / r2);
}

/// Closed forms of the steplike example.
inline double steplike_s(const SteplikeParams& p, double x) {
  const double mu = p.mu();
  return (1.0 / (2.0 * p.lambda)) *
         ((1.0 + std::pow(p.lambda - mu, 2) / (p.r * p.r)) * std::exp(2.0 * mu * x) +
          4.0 * p.d +
          p.d * p.d * (1.0 + std::pow(p.lambda + mu, 2) / (p.r * p.r)) *
              std::exp(-2.0 * mu * x));
}
inline double steplike_omega(const SteplikeParams& p, double x) {
  const double mu = p.mu();
  return p.r + (2.0 / p.r) *
                   ((mu - p.lambda) * std::exp(2.0 * mu * x) - 2.0 * p.d * p.lambda -
                    p.d * p.d * (p.lambda + mu) * std::exp(-2.0 * mu * x)) /
                   steplike_s(p, x);
}

/// Self-adjoint triple over a 2x2 Jordan cell A=[[2i,1],[0,2i]], a=1, c=0,
/// built with the negated root so that S(0) > 0; f1=[0;1], f2=0.
inline GbdtTriple sa_jordan_triple() {
  JordanSpec spec;
  spec.blocks.push_back({Complex(0.0, 2.0), 2, RootBranch::Negated});
  CMatrix f1 = CMatrix::Zero(2, 1), f2 = CMatrix::Zero(2, 1);
  f1(1, 0) = 1.0;
  return assemble_triple_jordan(spec, f1, f2, SeedPotential(Complex(1.0, 0.0), 0.0, 1),
                                self_adjoint(1));
}

/// Self-adjoint p=2 triple, A=diag(2i,3i), negated roots, S(0) > 0.
inline GbdtTriple sa_p2_triple() {
  const SeedPotential seed(Complex(1.0, 0.0), 0.0, 2);
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = Complex(0.0, 2.0);
  a(1, 1) = Complex(0.0, 3.0);
  CMatrix q = CMatrix::Zero(2, 2);
  q(0, 0) = Complex(0.0, -std::sqrt(5.0));
  q(1, 1) = Complex(0.0, -std::sqrt(10.0));
  CMatrix f1(2, 2), f2(2, 2);
  f1 << Complex(0.9, 0.1), Complex(0.2, -0.1), Complex(0.1, 0.2), Complex(1.1, 0.0);
  f2 << Complex(0.05, 0.0), Complex(0.0, 0.025), Complex(0.01, 0.0), Complex(-0.015, 0.0);
  return assemble_triple(a, q, f1, f2, seed, self_adjoint(2));
}

/// Trivial triples (Pi(0) = 0, transformation is the identity).
inline GbdtTriple trivial_sa_triple() {
  const SeedPotential seed(Complex(1.0, 0.0), 0.0, 1);
  CMatrix a(1, 1), f(1, 1);
  a(0, 0) = 3.0;
  f(0, 0) = 0.0;
  const CMatrix q = build_q_generic(a, seed, self_adjoint(1));
  return assemble_triple(a, q, f, f, seed, self_adjoint(1), CMatrix::Identity(1, 1));
}

inline GbdtTriple trivial_ssa_triple() {
  const SeedPotential seed(Complex(0.0, 1.0), 0.0, 1);
  CMatrix a(1, 1), f(1, 1);
  a(0, 0) = 2.0;
  f(0, 0) = 0.0;
  const CMatrix q = build_q_generic(a, seed, skew_self_adjoint(1));
  return assemble_triple(a, q, f, f, seed, skew_self_adjoint(1), CMatrix::Identity(1, 1));
}

} // namespace gbdt::fixtures

#endif
