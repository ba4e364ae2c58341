#include "fockcanon/complex_group.hpp"

#include <cmath>
#include <string>

namespace fockcanon {

double GroupElement::det() const { return std::norm(s) - std::norm(t); }

bool GroupElement::is_gl(double tol) const { return std::abs(det()) > tol; }

bool GroupElement::is_sl(double tol) const { return std::abs(det() - 1.0) <= tol; }

GroupElement make_gl(cplx s, cplx t) {
  GroupElement g{s, t};
  require_gl(g);
  return g;
}

GroupElement make_sl(cplx s, cplx t) {
  GroupElement g{s, t};
  require_sl(g);
  return g;
}

void require_gl(const GroupElement& g) {
  if (!g.is_gl())
    throw DegenerateElement("require_gl: |s|^2 - |t|^2 = " +
                            std::to_string(g.det()) +
                            " vanishes, |s| = |t| is outside the group");
}

void require_sl(const GroupElement& g) {
  if (!g.is_sl())
    throw DegenerateElement("require_sl: |s|^2 - |t|^2 = " +
                            std::to_string(g.det()) + " differs from 1");
}

RealSymplecticMatrix matmul(const RealSymplecticMatrix& A1,
                            const RealSymplecticMatrix& A2) {
  return {A1.a * A2.a + A1.b * A2.c, A1.a * A2.b + A1.b * A2.d,
          A1.c * A2.a + A1.d * A2.c, A1.c * A2.b + A1.d * A2.d};
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  return {g1.s * g2.s + std::conj(g1.t) * g2.t,
          g1.t * g2.s + std::conj(g1.s) * g2.t};
}

GroupElement inverse(const GroupElement& g) {
  const double d = g.det();
  if (!(std::abs(d) > tol_group))
    throw DegenerateElement("inverse: determinant " + std::to_string(d) +
                            " vanishes");
  return {std::conj(g.s) / d, -g.t / d};
}

GroupElement phi(const RealSymplecticMatrix& A) {
  if (!(std::abs(A.det()) > tol_group))
    throw SingularMatrix("phi: determinant " + std::to_string(A.det()) +
                         " vanishes");
  return {cplx{(A.a + A.d) / 2.0, (A.b - A.c) / 2.0},
          cplx{(A.a - A.d) / 2.0, (A.b + A.c) / 2.0}};
}

RealSymplecticMatrix phi_inverse(const GroupElement& g) {
  require_gl(g);
  const cplx sum = g.s + g.t;
  const cplx diff = g.s - g.t;
  return {sum.real(), sum.imag(), -diff.imag(), diff.real()};
}

Sign assert_unit_sign(cplx c, const char* context, double tol) {
  if (std::abs(c - cplx{1.0, 0.0}) <= tol) return Sign{+1};
  if (std::abs(c + cplx{1.0, 0.0}) <= tol) return Sign{-1};
  throw BranchFailure(std::string(context) + ": value (" +
                      std::to_string(c.real()) + ", " +
                      std::to_string(c.imag()) + ") is not a unit sign");
}

Sign cocycle(const GroupElement& g1, const GroupElement& g2) {
  require_gl(g1);
  require_gl(g2);
  // X = s1 s2 + conj(t1) t2 is the s parameter of the composition; it is
  // nonzero whenever |t_k| < |s_k| for both factors, which covers SL and
  // every in-Fock parameter pair. The ratio below squares to 1 exactly.
  const cplx X = g1.s * g2.s + std::conj(g1.t) * g2.t;
  if (std::abs(X) <= tol_group)
    throw DegenerateElement("cocycle: composed s parameter vanishes");
  const cplx c = principal_sqrt(X) / (principal_sqrt(g1.s) * principal_sqrt(g2.s)) *
                 principal_sqrt(g1.s * g2.s / X);
  return assert_unit_sign(c, "cocycle");
}

}  // namespace fockcanon
