#include "fockcanon/fock_core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

namespace fockcanon {

cplx principal_sqrt(cplx z) {
  if (z.imag() == 0.0) {
    // Covers both signed zeros: the branch endpoint theta = pi is included,
    // so negative reals map to +i sqrt(|z|).
    const double x = z.real();
    if (x >= 0.0) return {std::sqrt(x), 0.0};
    return {0.0, std::sqrt(-x)};
  }
  return std::sqrt(z);
}

namespace {

// Orthonormal Hermite values p_0..p_m at x for the weight e^{-x^2};
// p_{k+1} = x sqrt(2/(k+1)) p_k - sqrt(k/(k+1)) p_{k-1}, p_0 = pi^{-1/4}.
void orthonormal_hermite(std::size_t m, double x, std::vector<double>& p) {
  p.resize(m + 1);
  p[0] = std::pow(kPi, -0.25);
  if (m == 0) return;
  p[1] = x * std::sqrt(2.0) * p[0];
  for (std::size_t k = 1; k < m; ++k) {
    p[k + 1] = x * std::sqrt(2.0 / (k + 1)) * p[k] -
               std::sqrt(static_cast<double>(k) / (k + 1)) * p[k - 1];
  }
}

struct KahanSum {
  cplx sum{0.0, 0.0};
  cplx comp{0.0, 0.0};
  void add(cplx v) {
    const cplx y = v - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

QuadratureRule QuadratureRule::gauss_hermite(std::size_t m) {
  if (m < 1) throw UsageError("gauss_hermite: node count must be >= 1");

  // Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal
  // Jacobi matrix with off-diagonal sqrt(k/2).
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                            static_cast<Eigen::Index>(m));
  for (std::size_t k = 1; k < m; ++k) {
    const double beta = std::sqrt(k / 2.0);
    J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = beta;
    J(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);

  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i)
    x[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
  std::sort(x.begin(), x.end());

  // One or two Newton steps per node; p_m'(x) = sqrt(2m) p_{m-1}(x).
  std::vector<double> p;
  for (std::size_t i = 0; i < m; ++i) {
    for (int it = 0; it < 2; ++it) {
      orthonormal_hermite(m, x[i], p);
      const double deriv = std::sqrt(2.0 * m) * p[m - 1];
      if (deriv != 0.0) x[i] -= p[m] / deriv;
    }
  }

  // Enforce the exact symmetry of the rule.
  for (std::size_t i = 0; i < m / 2; ++i) {
    const double v = 0.5 * (x[m - 1 - i] - x[i]);
    x[i] = -v;
    x[m - 1 - i] = v;
  }
  if (m % 2 == 1) x[m / 2] = 0.0;

  QuadratureRule rule;
  rule.nodes_1d = x;
  rule.weights_1d.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    orthonormal_hermite(m, x[i], p);
    double denom = 0.0;
    for (std::size_t k = 0; k < m; ++k) denom += p[k] * p[k];
    rule.weights_1d[i] = 1.0 / denom;
  }
  for (std::size_t i = 0; i < m / 2; ++i) {
    const double w = 0.5 * (rule.weights_1d[i] + rule.weights_1d[m - 1 - i]);
    rule.weights_1d[i] = w;
    rule.weights_1d[m - 1 - i] = w;
  }
  rule.truncation_radius = std::abs(x.back());
  return rule;
}

cplx basis_e(unsigned n, cplx z) {
  // z^n / sqrt(n!) accumulated one factor z/sqrt(k) at a time.
  cplx term{1.0, 0.0};
  for (unsigned k = 1; k <= n; ++k) term *= z / std::sqrt(static_cast<double>(k));
  return term;
}

cplx TruncatedFockVector::eval(cplx z) const {
  cplx acc{0.0, 0.0};
  cplx basis{1.0, 0.0};
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (n > 0) basis *= z / std::sqrt(static_cast<double>(n));
    acc += coeffs[n] * basis;
  }
  return acc;
}

double TruncatedFockVector::norm_sq() const {
  double acc = 0.0;
  for (const cplx& c : coeffs) acc += std::norm(c);
  return acc;
}

cplx TruncatedFockVector::dot(const TruncatedFockVector& other) const {
  const std::size_t n = std::min(coeffs.size(), other.coeffs.size());
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) acc += coeffs[k] * std::conj(other.coeffs[k]);
  return acc;
}

std::function<cplx(cplx)> TruncatedFockVector::as_callable() const {
  TruncatedFockVector copy = *this;
  return [copy](cplx z) { return copy.eval(z); };
}

cplx integrate_gaussian_C(const std::function<cplx(cplx)>& g,
                          const QuadratureRule& rule) {
  const std::size_t m = rule.size();
  KahanSum acc;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = rule.nodes_1d[i];
    const double wx = rule.weights_1d[i];
    for (std::size_t j = 0; j < m; ++j) {
      const cplx v = g(cplx{x, rule.nodes_1d[j]});
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NonFiniteIntegrand("integrate_gaussian_C: non-finite value at node (" +
                                 std::to_string(x) + ", " +
                                 std::to_string(rule.nodes_1d[j]) + ")");
      acc.add((wx * rule.weights_1d[j]) * v);
    }
  }
  return acc.sum / kPi;
}

cplx integrate_gaussian_R(const std::function<cplx(double)>& f, cplx mu,
                          cplx c, const QuadratureRule& rule) {
  if (mu.real() <= 0.0)
    throw NonPositiveRealPart("integrate_gaussian_R: Re mu must be positive");
  // |e^{-mu(x-c)^2}| peaks at Re(c) - Im(c) Im(mu)/Re(mu) with real-Gaussian
  // width 1/sqrt(Re mu); recentring there keeps the sampled factor bounded.
  const double center = c.real() - c.imag() * mu.imag() / mu.real();
  const double scale = 1.0 / std::sqrt(mu.real());
  KahanSum acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double u = rule.nodes_1d[i];
    const double x = center + u * scale;
    const cplx dx = cplx{x, 0.0} - c;
    const cplx v = f(x) * std::exp(-mu * dx * dx + u * u);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NonFiniteIntegrand("integrate_gaussian_R: non-finite value at x = " +
                               std::to_string(x));
    acc.add(rule.weights_1d[i] * v);
  }
  return acc.sum * scale;
}

cplx fock_inner(const std::function<cplx(cplx)>& f,
                const std::function<cplx(cplx)>& g,
                const QuadratureRule& rule) {
  return integrate_gaussian_C(
      [&](cplx z) { return f(z) * std::conj(g(z)); }, rule);
}

std::function<cplx(cplx)> reproducing_kernel(cplx u) {
  const cplx ubar = std::conj(u);
  return [ubar](cplx z) { return std::exp(z * ubar); };
}

}  // namespace fockcanon
