#pragma once

#include <functional>

#include "fockcanon/canonical_operator.hpp"
#include "fockcanon/hermite.hpp"

namespace fockcanon {

// Spectral data of a unitary T^{(s,t)} with |Re s| < 1: the disk solution
// gamma of s conj(t) gamma^2 + (s^2 - 1 - |t|^2) gamma - s t = 0, the
// unimodular kappa = s + conj(t) gamma, and the positive rho with
// rho^2 = (1+gamma)[(s - conj(t)) kappa - 1] / (2 (kappa^2 - 1)).
struct SpectralData {
  GroupElement g;
  cplx gamma{};
  cplx kappa{};
  double rho = 0.0;
  // Smallest k >= 1 with kappa^k = 1 (within 1e-10), 0 if none up to the
  // probe bound. Degenerate kappa collapses distinct n onto one eigenvalue;
  // reported only, no extra eigenvectors are constructed.
  int degeneracy_k = 0;

  static SpectralData compute(const GroupElement& g);
  // NotUnitary, NoDiskSolution, DegenerateKappa
};

// gamma = 0 for t = 0; else i(-y + sgn(y) sqrt(1-x^2))/conj(t), s = x + iy.
// y = 0 with t != 0 would force |Re s| > 1 and is rejected upstream.
cplx solve_gamma(const GroupElement& g);  // NotUnitary, NoDiskSolution

// lambda_n = lambda_0 kappa^{-n}, lambda_0 = s^{-1/2} sqrt(s/kappa); |lambda_n| = 1.
cplx eigenvalue(const GroupElement& g, unsigned n);

double rho(const GroupElement& g);  // DegenerateKappa

// Q_n with leading coefficient normalized to 1 (eigenvectors are scale-free;
// the fixed normalization makes tests deterministic). Q_n is evaluated via
// the closed-form Hermite-Gaussian integral, not by quadrature.
Poly eigenfunction_poly(const GroupElement& g, unsigned n);

// f_n(z) = Q_n(z) e^{gamma z^2 / 2} with T f_n = lambda_n f_n.
std::function<cplx(cplx)> eigenfunction(const GroupElement& g, unsigned n);

// B^{-1} f_n up to a constant: x -> H_n(x/rho) exp[-((1-gamma)/(1+gamma)) x^2].
std::function<cplx(double)> inverse_bargmann_eigenfunction(
    const GroupElement& g, unsigned n);

// ||T f_n - lambda_n f_n|| / ||f_n||, max relative defect over a fixed
// 20-point sample of the disk |z| <= 1.5, with T applied by quadrature.
double eigen_residual(const GroupElement& g, unsigned n,
                      const QuadratureRule& rule);

}  // namespace fockcanon
