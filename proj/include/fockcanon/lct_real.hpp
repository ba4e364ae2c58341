#pragma once

#include <functional>
#include <vector>

#include "fockcanon/complex_group.hpp"
#include "fockcanon/hermite.hpp"

namespace fockcanon {

enum class WeightKind { GaussHermite, Uniform };

// Sampled element of L^2(R). Uniform grids integrate by the trapezoid rule
// (spectrally accurate for smooth functions that decay inside the span);
// GaussHermite grids carry the rule weights with the e^{x^2} correction.
struct SampledRealFunction {
  std::vector<double> grid;   // strictly increasing
  std::vector<cplx> values;
  WeightKind weight_kind = WeightKind::Uniform;
  // Per-node weights for the plain dx measure, fixed at construction:
  // trapezoid for uniform grids, rule weight times e^{x^2} for Gauss-Hermite.
  std::vector<double> weights;

  static SampledRealFunction sample(const std::function<cplx(double)>& f,
                                    double lo, double hi, std::size_t n);
  static SampledRealFunction sample_gauss_hermite(
      const std::function<cplx(double)>& f, const QuadratureRule& rule);

  std::size_t size() const { return grid.size(); }
  double spacing() const;               // uniform grids only
  double quad_weight(std::size_t i) const;
  cplx interpolate(double x) const;     // linear, 0 outside the span
  // integral of values against quad_weight
  cplx integrate(const std::function<cplx(double, cplx)>& term) const;
  double norm_l2() const;
};

void validate(const SampledRealFunction& f);  // UsageError

// F^A f(x); b != 0 uses the integral
//   (1/sqrt(i pi b)) e^{i d x^2/b} integral e^{-i(2xt - at^2)/b} f(t) dt,
// b = 0 the pointwise form sqrt(d) e^{i c d x^2} f(dx) with interpolation.
cplx lct_apply(const RealSymplecticMatrix& A, const SampledRealFunction& f,
               double x);  // SingularDet, OscillationBudgetExceeded

// Fractional Fourier transform e^{i alpha/2} F^{A_alpha}; alpha in {0, +-pi}
// bypass the integral as identity / parity. frft(pi/2) is the classical
// Fourier transform with kernel pi^{-1/2} e^{-2ixt}.
cplx frft(double alpha, const SampledRealFunction& f, double x);

// Bf(z) = (2/pi)^{1/4} integral f(x) e^{2xz - x^2 - z^2/2} dx
cplx bargmann(const SampledRealFunction& f, cplx z);  // NonFiniteIntegrand

// B^{-1}F(x) = (2/pi)^{1/4} integral F(z) e^{2x conj(z) - x^2 - conj(z)^2/2} dlambda(z)
cplx inverse_bargmann(const std::function<cplx(cplx)>& F, double x,
                      const QuadratureRule& rule);  // NonFiniteIntegrand

// C_A with B F^A B^{-1} = C_A T^{phi(A)}:
//   b != 0: sqrt(s)/sqrt(s+t-conj(s)-conj(t)) * sqrt((s+t-conj(s)-conj(t))/s)
//   b  = 0: sqrt(s) sqrt(1/(s+t)) sqrt((s+t)/s)
// with (s,t) = phi(A); asserted to land on +-1.
Sign bargmann_sign(const RealSymplecticMatrix& A);  // SingularDet, BranchFailure

// -1 iff (a < 0 and b = 0): the sign in (F^A)^{-1} = sign * F^{A^{-1}}.
Sign lct_inverse_sign(const RealSymplecticMatrix& A);  // SingularDet

// Numerical check of B F^A B^{-1} = bargmann_sign(A) T^{phi(A)} on a
// polynomial f: max over zs of
//   |B(F^A(B^{-1}f))(z) - sign * T^{phi(A)}f(z)| / (1 + |T^{phi(A)}f(z)|).
// For b = 0 matrices the middle leg evaluates B^{-1}f directly at d*x
// (the sampled-grid interpolation error would dominate the budget).
double verify_conjugation(const RealSymplecticMatrix& A, const Poly& f,
                          const std::vector<cplx>& zs,
                          const QuadratureRule& rule);

// psi_n(x) = (2/pi)^{1/4} (2^n n!)^{-1/2} H_n(sqrt(2) x) e^{-x^2};
// orthonormal in L^2(R) and mapped onto e_n by the Bargmann transform.
std::function<cplx(double)> hermite_gaussian(unsigned n);

}  // namespace fockcanon
