#include "fockcanon/canonical_operator.hpp"

#include <cmath>
#include <string>

#include "fockcanon/hermite.hpp"

namespace fockcanon {

const char* to_string(OperatorClass c) {
  switch (c) {
    case OperatorClass::Unbounded: return "Unbounded";
    case OperatorClass::Unitary: return "Unitary";
    case OperatorClass::HilbertSchmidt: return "HilbertSchmidt";
  }
  return "Unknown";
}

OperatorClass classify(const GroupElement& g) {
  if (std::norm(g.t) >= 4.0 * std::norm(g.s))
    throw DomainViolation("classify: requires |t| < 2|s|");
  const double d = g.det();
  if (std::abs(d - 1.0) <= tol_group) return OperatorClass::Unitary;
  if (d > 1.0) return OperatorClass::HilbertSchmidt;
  return OperatorClass::Unbounded;
}

double hs_norm_sq(const GroupElement& g) {
  if (classify(g) != OperatorClass::HilbertSchmidt)
    throw NotHilbertSchmidt("hs_norm_sq: |s|^2 - |t|^2 = " +
                            std::to_string(g.det()) + " is not > 1");
  return std::abs(g.s) / (g.det() - 1.0);
}

double hs_norm_sq_quadrature(const GroupElement& g,
                             const QuadratureRule& rule) {
  // |K(z,w)|^2 factors as A(z) B(w) e^{2x gg(w)} e^{2y hh(w)} / |s| with
  // z = x + iy and (gg, hh) linear in (Re w, Im w); the quadruple sum is
  // reordered so the cost stays at O(m^4) scalar operations.
  const std::size_t m = rule.size();
  const cplx sigma = 1.0 / g.s;
  const cplx ts = g.t / g.s;

  std::vector<double> Bv(m * m), gv(m * m), hv(m * m);
  for (std::size_t k = 0; k < m; ++k) {
    const double u = rule.nodes_1d[k];
    for (std::size_t l = 0; l < m; ++l) {
      const double v = rule.nodes_1d[l];
      const cplx wbar{u, -v};
      Bv[k * m + l] = rule.weights_1d[k] * rule.weights_1d[l] *
                      std::exp(-(std::conj(g.t) * wbar * wbar * sigma).real());
      gv[k * m + l] = u * sigma.real() + v * sigma.imag();
      hv[k * m + l] = v * sigma.real() - u * sigma.imag();
    }
  }

  std::vector<double> T1(m * m * m), T2(m * m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = rule.nodes_1d[i];
    for (std::size_t kl = 0; kl < m * m; ++kl) {
      T1[i * m * m + kl] = std::exp(2.0 * xi * gv[kl]);
      T2[i * m * m + kl] = std::exp(2.0 * xi * hv[kl]);
    }
  }

  std::vector<double> S1(m * m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = rule.nodes_1d[i];
    for (std::size_t kl = 0; kl < m * m; ++kl)
      S1[kl] = T1[i * m * m + kl] * Bv[kl];
    for (std::size_t j = 0; j < m; ++j) {
      const double yj = rule.nodes_1d[j];
      double row = 0.0;
      const double* t2 = &T2[j * m * m];
      for (std::size_t kl = 0; kl < m * m; ++kl) row += t2[kl] * S1[kl];
      const cplx z{xi, yj};
      const double Az = std::exp((ts * z * z).real());
      total += rule.weights_1d[i] * rule.weights_1d[j] * Az * row;
    }
  }
  return total / (std::abs(g.s) * kPi * kPi);
}

cplx apply(const GroupElement& g, const std::function<cplx(cplx)>& f, cplx z,
           const QuadratureRule& rule, bool allow_unbounded) {
  if (classify(g) == OperatorClass::Unbounded && !allow_unbounded)
    throw DomainViolation(
        "apply: operator is unbounded; pass allow_unbounded to integrate "
        "pointwise anyway");
  return integrate_gaussian_C(
      [&](cplx w) { return kernel_eval(g, z, w) * f(w); }, rule);
}

cplx apply(const GroupElement& g, const TruncatedFockVector& f, cplx z,
           const QuadratureRule& rule, bool allow_unbounded) {
  return apply(
      g, [&f](cplx w) { return f.eval(w); }, z, rule, allow_unbounded);
}

std::function<cplx(cplx)> apply_to_basis(const GroupElement& g, unsigned n) {
  if (!kernel_in_fock(g))
    throw NotInFock("apply_to_basis: requires |t| < |s|");
  if (n > kHermiteMaxDegree)
    throw OverflowGuard("apply_to_basis: n exceeds degree cap");

  double root_fact = 1.0;
  for (unsigned k = 1; k <= n; ++k) root_fact *= std::sqrt(static_cast<double>(k));

  if (g.t == cplx{0.0, 0.0}) {
    cplx c = 1.0 / principal_sqrt(g.s);
    for (unsigned k = 0; k < n; ++k) c /= g.s;
    return [c, n](cplx z) { return c * basis_e(n, z); };
  }

  // r^n H_n(z r / conj(t)) is invariant under r -> -r by Hermite parity, so
  // either square root of conj(t)/(2s) gives the same function.
  const cplx tbar = std::conj(g.t);
  const cplx r = principal_sqrt(tbar / (2.0 * g.s));
  cplx rn{1.0, 0.0};
  for (unsigned k = 0; k < n; ++k) rn *= r;
  const cplx c0 = rn / (principal_sqrt(g.s) * root_fact);
  const cplx half_ts = g.t / (2.0 * g.s);
  const cplx arg_scale = r / tbar;
  return [c0, half_ts, arg_scale, n](cplx z) {
    return c0 * std::exp(half_ts * z * z) * hermite_eval(n, z * arg_scale);
  };
}

namespace {

Eigen::MatrixXcd matrix_closed_form(const GroupElement& g, int N) {
  // Coupled recurrences from the generating function
  //   sum M_{mn} v^m conj(u)^n / sqrt(m! n!) = s^{-1/2} e^{Pv^2 + Qu^2 + Rvu}.
  const cplx P = g.t / (2.0 * g.s);
  const cplx Q = -std::conj(g.t) / (2.0 * g.s);
  const cplx R = 1.0 / g.s;

  Eigen::MatrixXcd M(N, N);
  M.setZero();
  M(0, 0) = 1.0 / principal_sqrt(g.s);
  for (int m = 2; m < N; ++m)
    M(m, 0) = 2.0 * P * std::sqrt((m - 1.0) / m) * M(m - 2, 0);
  for (int n = 1; n < N; ++n) {
    for (int m = 0; m < N; ++m) {
      cplx v{0.0, 0.0};
      if (n >= 2) v += 2.0 * Q * std::sqrt((n - 1.0) / n) * M(m, n - 2);
      if (m >= 1) v += R * std::sqrt(static_cast<double>(m) / n) * M(m - 1, n - 1);
      M(m, n) = v;
    }
  }
  return M;
}

Eigen::MatrixXcd matrix_quadrature(const GroupElement& g, int N,
                                   const QuadratureRule& rule) {
  // K(z,w) = A(z) B(w) e^{z conj(w)/s}; stream over z nodes, computing for
  // each the inner integrals g_n(z) = int K(z,w) e_n(w) dlambda(w) for all n
  // at once, then accumulate M_{mn} += weight * conj(e_m(z)) g_n(z).
  const std::size_t m = rule.size();
  const cplx sigma = 1.0 / g.s;
  const cplx half_ts = g.t / (2.0 * g.s);
  const cplx half_tbar_s = std::conj(g.t) / (2.0 * g.s);
  const cplx inv_root_s = 1.0 / principal_sqrt(g.s);

  // Per w node: combined weight factor and the basis values e_n(w).
  const std::size_t wn = m * m;
  std::vector<cplx> wfac(wn), wbar(wn);
  std::vector<cplx> ew(wn * static_cast<std::size_t>(N));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l) {
      const std::size_t kl = k * m + l;
      const cplx w{rule.nodes_1d[k], rule.nodes_1d[l]};
      const cplx wb = std::conj(w);
      wbar[kl] = wb;
      wfac[kl] = rule.weights_1d[k] * rule.weights_1d[l] *
                 std::exp(-half_tbar_s * wb * wb);
      cplx e{1.0, 0.0};
      ew[kl * N] = e;
      for (int n = 1; n < N; ++n) {
        e *= w / std::sqrt(static_cast<double>(n));
        ew[kl * N + n] = e;
      }
    }
  }

  Eigen::MatrixXcd M(N, N);
  M.setZero();
  std::vector<cplx> inner(static_cast<std::size_t>(N));
  std::vector<cplx> ez(static_cast<std::size_t>(N));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const cplx z{rule.nodes_1d[i], rule.nodes_1d[j]};
      std::fill(inner.begin(), inner.end(), cplx{0.0, 0.0});
      for (std::size_t kl = 0; kl < wn; ++kl) {
        const cplx E = wfac[kl] * std::exp(z * wbar[kl] * sigma);
        const cplx* e = &ew[kl * N];
        for (int n = 0; n < N; ++n) inner[n] += E * e[n];
      }
      const cplx Az = inv_root_s * std::exp(half_ts * z * z) *
                      rule.weights_1d[i] * rule.weights_1d[j];
      cplx e{1.0, 0.0};
      ez[0] = std::conj(e);
      for (int k = 1; k < N; ++k) {
        e *= z / std::sqrt(static_cast<double>(k));
        ez[k] = std::conj(e);
      }
      for (int mm = 0; mm < N; ++mm)
        for (int n = 0; n < N; ++n) M(mm, n) += Az * ez[mm] * inner[n];
    }
  }
  return M / (kPi * kPi);
}

}  // namespace

Eigen::MatrixXcd matrix(const GroupElement& g, int N, MatrixMethod method,
                        const QuadratureRule& rule) {
  if (!kernel_in_fock(g)) throw NotInFock("matrix: requires |t| < |s|");
  if (N < 1 || N > kMaxTruncation)
    throw TruncationTooLarge("matrix: N = " + std::to_string(N) +
                             " outside [1, " + std::to_string(kMaxTruncation) +
                             "]");
  if (method == MatrixMethod::ClosedForm) return matrix_closed_form(g, N);
  return matrix_quadrature(g, N, rule);
}

Eigen::MatrixXcd matrix(const GroupElement& g, int N) {
  if (!kernel_in_fock(g)) throw NotInFock("matrix: requires |t| < |s|");
  if (N < 1 || N > kMaxTruncation)
    throw TruncationTooLarge("matrix: N = " + std::to_string(N) +
                             " outside [1, " + std::to_string(kMaxTruncation) +
                             "]");
  return matrix_closed_form(g, N);
}

std::pair<GroupElement, Sign> adjoint_params(const GroupElement& g) {
  if (classify(g) != OperatorClass::Unitary)
    throw NotUnitary("adjoint_params: |s|^2 - |t|^2 must equal 1");
  return {GroupElement{std::conj(g.s), -g.t}, conjugate_symmetry_sign(g)};
}

std::pair<GroupElement, Sign> compose_operators(const GroupElement& g1,
                                                const GroupElement& g2) {
  if (!g1.is_sl() || !g2.is_sl())
    throw NotUnitary("compose_operators: both factors must lie in SL(CxC)");
  return {compose(g1, g2), cocycle(g1, g2)};
}

}  // namespace fockcanon
