#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "fockcanon/errors.hpp"

namespace fockcanon {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Square root with theta in (-pi, pi]: negative reals (exact zero imaginary
// part, either signed zero) map to +i*sqrt(|z|). Every branch-sensitive
// prefactor in the library must go through this function instead of
// std::sqrt on complex values.
cplx principal_sqrt(cplx z);

// Gauss-Hermite rule for the weight e^{-x^2} dx on the real line; the
// complex Gaussian measure dlambda = pi^{-1} e^{-|z|^2} dA is integrated as
// the tensor product of two such rules over (Re z, Im z).
struct QuadratureRule {
  std::vector<double> nodes_1d;
  std::vector<double> weights_1d;
  double truncation_radius = 0.0;  // largest |node|

  std::size_t size() const { return nodes_1d.size(); }

  // m-node rule, exact for polynomials of degree <= 2m-1 against e^{-x^2}.
  static QuadratureRule gauss_hermite(std::size_t m);
};

// Coefficients against the orthonormal monomial basis e_n(z) = z^n/sqrt(n!).
struct TruncatedFockVector {
  std::vector<cplx> coeffs;

  cplx eval(cplx z) const;
  double norm_sq() const;
  // sum_n a_n conj(b_n) over the common range
  cplx dot(const TruncatedFockVector& other) const;
  std::function<cplx(cplx)> as_callable() const;
};

// e_n(z) = z^n / sqrt(n!)
cplx basis_e(unsigned n, cplx z);

// integral over C of g dlambda. Summation is compensated and runs in a fixed
// node order so results are bit-reproducible across runs.
cplx integrate_gaussian_C(const std::function<cplx(cplx)>& g,
                          const QuadratureRule& rule);

// integral over R of f(x) e^{-mu (x - c)^2} dx for Re mu > 0 and complex
// shift c. The rule is applied against the real Gaussian envelope of the
// integrand (recentred and rescaled), so f only needs polynomial growth.
cplx integrate_gaussian_R(const std::function<cplx(double)>& f, cplx mu,
                          cplx c, const QuadratureRule& rule);

// <f, g> = integral of f(z) conj(g(z)) dlambda(z)
cplx fock_inner(const std::function<cplx(cplx)>& f,
                const std::function<cplx(cplx)>& g,
                const QuadratureRule& rule);

// K_u(z) = e^{z conj(u)}; satisfies <f, K_u> = f(u) on F^2.
std::function<cplx(cplx)> reproducing_kernel(cplx u);

}  // namespace fockcanon
