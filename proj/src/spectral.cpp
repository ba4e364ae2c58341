#include "fockcanon/spectral.hpp"

#include <cmath>
#include <string>

namespace fockcanon {

namespace {

void require_admissible(const GroupElement& g, const char* context) {
  if (!g.is_sl())
    throw NotUnitary(std::string(context) + ": requires |s|^2 - |t|^2 = 1");
  if (std::abs(g.s.real()) >= 1.0)
    throw NoDiskSolution(std::string(context) +
                         ": |Re s| >= 1, both roots are unimodular");
}

cplx kappa_of(const GroupElement& g, cplx gamma) {
  return g.s + std::conj(g.t) * gamma;
}

}  // namespace

cplx solve_gamma(const GroupElement& g) {
  require_admissible(g, "solve_gamma");
  if (g.t == cplx{0.0, 0.0}) return {0.0, 0.0};
  const double x = g.s.real();
  const double y = g.s.imag();
  // y = 0 with t != 0 would force |Re s| = |s| > 1, excluded above.
  const double root = std::sqrt(1.0 - x * x);
  const double sgn_y = (y >= 0.0) ? 1.0 : -1.0;
  return cplx{0.0, 1.0} * (-y + sgn_y * root) / std::conj(g.t);
}

SpectralData SpectralData::compute(const GroupElement& g) {
  SpectralData d;
  d.g = g;
  d.gamma = solve_gamma(g);
  d.kappa = kappa_of(g, d.gamma);

  const cplx quad_res = g.s * std::conj(g.t) * d.gamma * d.gamma +
                        (g.s * g.s - 1.0 - std::norm(g.t)) * d.gamma -
                        g.s * g.t;
  if (std::abs(quad_res) > 1e-10)
    throw BranchFailure("SpectralData: gamma residual " +
                        std::to_string(std::abs(quad_res)));
  if (std::abs(std::abs(d.kappa) - 1.0) > 1e-10)
    throw BranchFailure("SpectralData: |kappa| = " +
                        std::to_string(std::abs(d.kappa)));

  d.rho = fockcanon::rho(g);

  cplx kp = d.kappa;
  for (int k = 1; k <= 64; ++k) {
    if (std::abs(kp - cplx{1.0, 0.0}) <= 1e-10) {
      d.degeneracy_k = k;
      break;
    }
    kp *= d.kappa;
  }
  return d;
}

cplx eigenvalue(const GroupElement& g, unsigned n) {
  const cplx gamma = solve_gamma(g);
  const cplx kappa = kappa_of(g, gamma);
  cplx lambda = principal_sqrt(g.s / kappa) / principal_sqrt(g.s);
  for (unsigned k = 0; k < n; ++k) lambda /= kappa;
  return lambda;
}

double rho(const GroupElement& g) {
  const cplx gamma = solve_gamma(g);
  const cplx kappa = kappa_of(g, gamma);
  const cplx denom = kappa * kappa - 1.0;
  if (std::abs(denom) <= 1e-12)
    throw DegenerateKappa("rho: kappa^2 = 1, the defining quotient degenerates");
  const cplx rho_sq =
      (1.0 + gamma) * ((g.s - std::conj(g.t)) * kappa - 1.0) / (2.0 * denom);
  if (std::abs(rho_sq.imag()) > 1e-10 || rho_sq.real() <= 0.0)
    throw BranchFailure("rho: rho^2 = (" + std::to_string(rho_sq.real()) +
                        ", " + std::to_string(rho_sq.imag()) +
                        ") is not positive real");
  return std::sqrt(rho_sq.real());
}

Poly eigenfunction_poly(const GroupElement& g, unsigned n) {
  const cplx gamma = solve_gamma(g);
  const double r = rho(g);
  // Q_n(z) = int H_n(x/rho) exp[-(2/(1+gamma)) (x - ((1+gamma)/2) z)^2] dx,
  // rescaled to x = rho u and normalized to leading coefficient 1:
  //   coeff of z^{n-2k} is (-1)^k n! ((1 - 1/mu)/a^2)^k / (4^k k! (n-2k)!),
  //   mu = 2 rho^2/(1+gamma), a = (1+gamma)/(2 rho).
  const cplx mu = 2.0 * r * r / (1.0 + gamma);
  const cplx a = (1.0 + gamma) / (2.0 * r);
  const cplx step = (1.0 - 1.0 / mu) / (a * a);

  double fact = 1.0;
  for (unsigned k = 2; k <= n; ++k) fact *= k;

  Poly q;
  q.coeffs.assign(n + 1, cplx{0.0, 0.0});
  double sign = 1.0;
  double four_pow = 1.0;
  double k_fact = 1.0;
  cplx step_pow{1.0, 0.0};
  double m_fact = fact;  // (n-2k)!
  for (unsigned k = 0; 2 * k <= n; ++k) {
    const unsigned m = n - 2 * k;
    q.coeffs[m] = sign * fact * step_pow / (four_pow * k_fact * m_fact);
    sign = -sign;
    four_pow *= 4.0;
    k_fact *= (k + 1);
    step_pow *= step;
    if (m >= 2) m_fact /= static_cast<double>(m) * (m - 1);
  }
  return q;
}

std::function<cplx(cplx)> eigenfunction(const GroupElement& g, unsigned n) {
  const Poly q = eigenfunction_poly(g, n);
  const cplx half_gamma = solve_gamma(g) / 2.0;
  return [q, half_gamma](cplx z) {
    return q.eval(z) * std::exp(half_gamma * z * z);
  };
}

std::function<cplx(double)> inverse_bargmann_eigenfunction(
    const GroupElement& g, unsigned n) {
  const cplx gamma = solve_gamma(g);
  const double r = rho(g);
  const cplx decay = (1.0 - gamma) / (1.0 + gamma);
  return [r, decay, n](double x) {
    return hermite_eval(n, cplx{x / r, 0.0}) * std::exp(-decay * x * x);
  };
}

double eigen_residual(const GroupElement& g, unsigned n,
                      const QuadratureRule& rule) {
  const auto f = eigenfunction(g, n);
  const cplx lambda = eigenvalue(g, n);
  double peak = 0.0;
  double defect = 0.0;
  for (int j = 0; j < 20; ++j) {
    const double radius = 1.5 * (j + 1) / 20.0;
    const cplx z = radius * std::exp(cplx{0.0, 2.4 * j});
    const cplx fz = f(z);
    const cplx tz = apply(g, f, z, rule);
    peak = std::max(peak, std::abs(fz));
    defect = std::max(defect, std::abs(tz - lambda * fz));
  }
  if (peak == 0.0) return 0.0;
  return defect / peak;
}

}  // namespace fockcanon
