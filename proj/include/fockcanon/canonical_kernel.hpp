#pragma once

#include <functional>

#include "fockcanon/complex_group.hpp"

namespace fockcanon {

// K^{(s,t)}(z,w) = s^{-1/2} exp[(t z^2 - conj(t) conj(w)^2 + 2 z conj(w))/(2s)]
cplx kernel_eval(const GroupElement& g, cplx z, cplx w);  // ZeroS

// K_w^{(s,t)} lies in F^2 for every w iff |s| > |t| (strict; boundary excluded)
bool kernel_in_fock(const GroupElement& g);  // ZeroS

// ||K_w^{(s,t)}||, closed form
//   (|s|^2-|t|^2)^{-1/4} e^{|w|^2/(2(|s|^2-|t|^2))}
//   * |exp[t(|t|^2+1-|s|^2) w^2 / (2 conj(s)(|s|^2-|t|^2))]|
double kernel_norm(const GroupElement& g, cplx w);  // NotInFock

// c with conj(K^{(s,t)}(z,w)) = c K^{(conj(s),-t)}(w,z). The sign is
// discontinuous across the negative real s axis (exact zero test on Im s);
// it is computed as principal_sqrt(conj(s))/conj(principal_sqrt(s)) and
// asserted to be +-1.
Sign conjugate_symmetry_sign(const GroupElement& g);  // BranchFailure

// integral over w of K^{g1}(z,w) K^{g2}(w,u) dlambda(w)
//   = sign * K^{g}(z,u) * extra_factor(z,u),  g = compose(g1,g2).
// The extra factor is identically 1 when both inputs lie in SL(CxC); the
// sign matches cocycle(g1,g2) there.
struct KernelComposition {
  GroupElement g;
  Sign sign;
  std::function<cplx(cplx, cplx)> extra_factor;  // arguments (z, u)

  cplx eval(cplx z, cplx u) const;  // sign * K^{g}(z,u) * extra_factor(z,u)
};

KernelComposition kernel_compose(const GroupElement& g1,
                                 const GroupElement& g2);  // NotInFock

}  // namespace fockcanon
