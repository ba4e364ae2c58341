#include "fockcanon/canonical_kernel.hpp"

#include <cmath>
#include <string>

namespace fockcanon {

namespace {

void require_nonzero_s(const GroupElement& g, const char* context) {
  if (g.s == cplx{0.0, 0.0})
    throw ZeroS(std::string(context) + ": s must be nonzero");
}

}  // namespace

cplx kernel_eval(const GroupElement& g, cplx z, cplx w) {
  require_nonzero_s(g, "kernel_eval");
  const cplx wbar = std::conj(w);
  const cplx expo =
      (g.t * z * z - std::conj(g.t) * wbar * wbar + 2.0 * z * wbar) /
      (2.0 * g.s);
  return std::exp(expo) / principal_sqrt(g.s);
}

bool kernel_in_fock(const GroupElement& g) {
  require_nonzero_s(g, "kernel_in_fock");
  return std::abs(g.t) < std::abs(g.s);
}

double kernel_norm(const GroupElement& g, cplx w) {
  if (!kernel_in_fock(g))
    throw NotInFock("kernel_norm: requires |t| < |s|, got |s| = " +
                    std::to_string(std::abs(g.s)) + ", |t| = " +
                    std::to_string(std::abs(g.t)));
  const double d = std::norm(g.s) - std::norm(g.t);
  const cplx quad = g.t * (std::norm(g.t) + 1.0 - std::norm(g.s)) * w * w /
                    (2.0 * std::conj(g.s) * d);
  return std::pow(d, -0.25) * std::exp(std::norm(w) / (2.0 * d)) *
         std::exp(quad.real());
}

Sign conjugate_symmetry_sign(const GroupElement& g) {
  require_nonzero_s(g, "conjugate_symmetry_sign");
  const cplx c = principal_sqrt(std::conj(g.s)) / std::conj(principal_sqrt(g.s));
  return assert_unit_sign(c, "conjugate_symmetry_sign");
}

cplx KernelComposition::eval(cplx z, cplx u) const {
  return sign.as_double() * kernel_eval(g, z, u) * extra_factor(z, u);
}

KernelComposition kernel_compose(const GroupElement& g1,
                                 const GroupElement& g2) {
  // The w-integral converges iff K^{g1}(z, .) has conjugate parameters in F^2
  // and K^{g2}(., u) is in F^2, both of which reduce to |t_k| < |s_k|.
  if (!kernel_in_fock(g1) || !kernel_in_fock(g2))
    throw NotInFock("kernel_compose: both factors need |t| < |s|");

  const GroupElement g = compose(g1, g2);
  const cplx X = g.s;  // s1 s2 + conj(t1) t2, nonzero on the domain

  // Residual Gaussian factors in z and conj(u); both vanish when the inputs
  // are in SL(CxC) since |t|^2 + 1 - |s|^2 = 0 there.
  const cplx cz = g2.t * (std::norm(g1.t) + 1.0 - std::norm(g1.s)) /
                  (2.0 * g1.s * X);
  const cplx cu = std::conj(g1.t) * (std::norm(g2.t) + 1.0 - std::norm(g2.s)) /
                  (2.0 * g2.s * X);

  KernelComposition result;
  result.g = g;
  result.sign = cocycle(g1, g2);
  result.extra_factor = [cz, cu](cplx z, cplx u) {
    const cplx ubar = std::conj(u);
    return std::exp(cz * z * z - cu * ubar * ubar);
  };
  return result;
}

}  // namespace fockcanon
