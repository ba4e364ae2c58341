#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>

#include "fockcanon/canonical_kernel.hpp"

namespace fockcanon {

enum class OperatorClass { Unbounded, Unitary, HilbertSchmidt };

enum class MatrixMethod { Quadrature, ClosedForm };

inline constexpr int kMaxTruncation = 256;

const char* to_string(OperatorClass c);

// Trichotomy in |s|^2 - |t|^2: < 1 unbounded, = 1 (within tol_group) unitary,
// > 1 Hilbert-Schmidt. Parameters must satisfy |t| < 2|s|.
OperatorClass classify(const GroupElement& g);  // DomainViolation

// Squared S2 norm |s| / (|s|^2 - |t|^2 - 1). The double integral of |K|^2
// converges to this value; see hs_norm_sq_quadrature for the oracle.
double hs_norm_sq(const GroupElement& g);  // NotHilbertSchmidt

// Independent double quadrature of the squared S2 norm: all four real axes
// of (z, w) are integrated with the tensor rule. Exact reordering of the
// quadruple sum keeps the cost at nodes^4 scalar operations.
double hs_norm_sq_quadrature(const GroupElement& g, const QuadratureRule& rule);

// T^{(s,t)}f(z) = integral K^{(s,t)}(z,w) f(w) dlambda(w). Applying an
// unbounded operator needs the explicit opt-in flag; the pointwise integral
// is still legitimate for integrands with enough decay.
cplx apply(const GroupElement& g, const std::function<cplx(cplx)>& f, cplx z,
           const QuadratureRule& rule,
           bool allow_unbounded = false);  // DomainViolation, NonFiniteIntegrand

cplx apply(const GroupElement& g, const TruncatedFockVector& f, cplx z,
           const QuadratureRule& rule, bool allow_unbounded = false);

// Closed form of T^{(s,t)} e_n:
//   t != 0: (s n!)^{-1/2} e^{t z^2/(2s)} r^n H_n(z r / conj(t)),
//           r any square root of conj(t)/(2s) (the product is branch-free);
//   t  = 0: s^{-n-1/2} e_n(z).
// Validated against the quadrature of apply(g, e_n, .) in the test suite.
std::function<cplx(cplx)> apply_to_basis(const GroupElement& g,
                                         unsigned n);  // NotInFock, OverflowGuard

// M_{mn} = <T e_n, e_m>, 0 <= m,n < N.
// ClosedForm: exact coupled recurrences from the generating function
//   sum_{m,n} M_{mn} v^m u^n / sqrt(m! n!) = s^{-1/2} exp(P v^2 + Q u^2 + R v u),
//   P = t/(2s), Q = -conj(t)/(2s), R = 1/s.
// Quadrature: double integral over (w, z) with the tensor rule; serves as the
// oracle for ClosedForm and shares no code with it.
Eigen::MatrixXcd matrix(const GroupElement& g, int N, MatrixMethod method,
                        const QuadratureRule& rule);  // NotInFock, TruncationTooLarge

// ClosedForm without a rule.
Eigen::MatrixXcd matrix(const GroupElement& g, int N);

// Adjoint of a unitary T^{(s,t)}: ((conj(s), -t), c) with c the conjugate
// symmetry sign of the kernel.
std::pair<GroupElement, Sign> adjoint_params(const GroupElement& g);  // NotUnitary

// T^{g1} T^{g2} = sign * T^{compose(g1,g2)} for unitary factors.
std::pair<GroupElement, Sign> compose_operators(const GroupElement& g1,
                                                const GroupElement& g2);  // NotUnitary

}  // namespace fockcanon
