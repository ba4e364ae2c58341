#pragma once

#include "fockcanon/fock_core.hpp"

namespace fockcanon {

// Tolerance for group-membership assertions (pure double arithmetic, O(1)
// operation counts).
inline constexpr double tol_group = 1e-12;

// Element (s,t) of GL(CxC). The group operations require |s| != |t|; the
// boundary |s| = |t| stays representable because the kernel module accepts
// parameters under the weaker constraint |t| < 2|s|.
struct GroupElement {
  cplx s{1.0, 0.0};
  cplx t{0.0, 0.0};

  // |s|^2 - |t|^2; multiplicative under compose
  double det() const;
  bool is_gl(double tol = tol_group) const;
  bool is_sl(double tol = tol_group) const;
};

// Validating factories. Construction through these rejects degenerate input
// eagerly instead of clamping onto the group.
GroupElement make_gl(cplx s, cplx t);
GroupElement make_sl(cplx s, cplx t);

void require_gl(const GroupElement& g);  // DegenerateElement
void require_sl(const GroupElement& g);  // DegenerateElement

struct RealSymplecticMatrix {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  double det() const { return a * d - b * c; }
};

RealSymplecticMatrix matmul(const RealSymplecticMatrix& A1,
                            const RealSymplecticMatrix& A2);

struct Sign {
  int value = +1;  // +1 or -1
  double as_double() const { return static_cast<double>(value); }
};

inline Sign operator*(Sign a, Sign b) { return Sign{a.value * b.value}; }

// (s1 s2 + conj(t1) t2, t1 s2 + conj(s1) t2)
GroupElement compose(const GroupElement& g1, const GroupElement& g2);

// (conj(s)/(|s|^2-|t|^2), -t/(|s|^2-|t|^2))
GroupElement inverse(const GroupElement& g);

// phi(A) = ((a+d)/2 + i(b-c)/2, (a-d)/2 + i(b+c)/2); |s|^2-|t|^2 = det A
GroupElement phi(const RealSymplecticMatrix& A);  // SingularMatrix

// A = [[Re(s+t), Im(s+t)], [-Im(s-t), Re(s-t)]]; inverse of phi exactly
RealSymplecticMatrix phi_inverse(const GroupElement& g);  // DegenerateElement

// The +-1 factor with T^{g1} T^{g2} = cocycle(g1,g2) T^{g1 g2} for unitary
// operators. Computed from principal branches and asserted to land on +-1;
// never hard-coded.
Sign cocycle(const GroupElement& g1, const GroupElement& g2);  // BranchFailure

// Maps a computed value expected to be +-1 onto Sign, enforcing the claim.
Sign assert_unit_sign(cplx c, const char* context, double tol = tol_group);

}  // namespace fockcanon
