#pragma once

#include <functional>
#include <vector>

#include "fockcanon/fock_core.hpp"

namespace fockcanon {

// Coefficients in ascending degree; leading coefficient nonzero unless the
// zero polynomial.
struct Poly {
  std::vector<cplx> coeffs;

  int degree() const;  // -1 for the zero polynomial
  cplx eval(cplx x) const;
  Poly derivative() const;
};

// Degree cap for the double-precision coefficient recurrences; n! leaves the
// double range near n = 170 but cancellation degrades well before that.
inline constexpr unsigned kHermiteMaxDegree = 64;

// H_n from the recursion H_n = 2x H_{n-1} - H'_{n-1}, H_0 = 1.
Poly hermite(unsigned n);  // OverflowGuard

// Point evaluation of H_n by three-term recurrence (no coefficient blowup).
cplx hermite_eval(unsigned n, cplx x);  // OverflowGuard

// P_n(x) = sum_k (-1)^k 2^n n! / (4^k k! (n-2k)! delta^k) x^{n-2k};
// delta = 1 reproduces hermite(n); satisfies P_k = 2x P_{k-1} - P'_{k-1}/delta.
Poly generalized_hermite(unsigned n, cplx delta);  // ZeroDelta, OverflowGuard

// integral over R of x^n e^{-mu (x+z)^2} dx as a degree-n polynomial in z:
// sum over even k of (-1)^{n-k} n! Gamma((k+1)/2) / (k! (n-k)! mu^{(k+1)/2})
// times z^{n-k}, with mu^{(k+1)/2} = principal_sqrt(mu)^{k+1}.
cplx gaussian_moment(unsigned n, cplx mu, cplx z);  // NonPositiveRealPart

// integral over R of generalized_hermite(n, delta)(x) e^{-mu (x - a z)^2} dx:
// sum_k (-1)^k 2^n n! a^{n-2k} sqrt(pi) (1 - delta/mu)^k
//        / (4^k k! (n-2k)! delta^k sqrt(mu)) * z^{n-2k}.
cplx hermite_gaussian_integral(unsigned n, cplx delta, cplx mu, cplx a,
                               cplx z);  // NonPositiveRealPart, ZeroDelta

// Parameters of the integral equation
//   integral P_n(x) e^{-mu(x-az)^2} dx = C_n integral P_n(x) e^{-nu(x-bz)^2} dx
// with C_n = (sqrt(nu)/sqrt(mu)) (a/b)^n and
// delta = (b^2-a^2) mu nu / (nu b^2 - mu a^2).
struct IntegralEqParams {
  cplx mu;
  cplx nu;
  cplx a;
  cplx b;
  unsigned n = 0;
  cplx delta{1.0, 0.0};
};

// Solves the delta constraint for nu given (mu, a, b, delta).
cplx solve_nu_for_delta(cplx mu, cplx a, cplx b, cplx delta);

// Max over 10 z samples of |LHS - C_n RHS| / (|LHS| + |RHS|), both sides by
// quadrature against the rule. Vanishes (to quadrature accuracy) exactly when
// P is a constant multiple of generalized_hermite(p.n, p.delta).
double verify_integral_equation(const IntegralEqParams& p, const Poly& P,
                                const QuadratureRule& rule);  // HypothesisViolation

}  // namespace fockcanon
