#include "fockcanon/hermite.hpp"

#include <cmath>
#include <string>

namespace fockcanon {

namespace {

double factorial(unsigned n) {
  // n! is finite in double up to n = 170.
  static const std::vector<double> table = [] {
    std::vector<double> t(171);
    t[0] = 1.0;
    for (unsigned k = 1; k <= 170; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  if (n >= table.size())
    throw OverflowGuard("factorial: " + std::to_string(n) + "! exceeds double range");
  return table[n];
}

void require_degree(unsigned n, const char* context) {
  if (n > kHermiteMaxDegree)
    throw OverflowGuard(std::string(context) + ": degree " + std::to_string(n) +
                        " exceeds cap " + std::to_string(kHermiteMaxDegree));
}

// x^0 .. x^n by repeated multiplication; exact at x = 0 where the pow
// overloads can produce NaN for a zero exponent.
std::vector<cplx> powers(cplx x, unsigned n) {
  std::vector<cplx> p(n + 1);
  p[0] = {1.0, 0.0};
  for (unsigned k = 1; k <= n; ++k) p[k] = p[k - 1] * x;
  return p;
}

}  // namespace

int Poly::degree() const {
  for (std::size_t i = coeffs.size(); i > 0; --i)
    if (coeffs[i - 1] != cplx{0.0, 0.0}) return static_cast<int>(i - 1);
  return -1;
}

cplx Poly::eval(cplx x) const {
  cplx acc{0.0, 0.0};
  for (std::size_t i = coeffs.size(); i > 0; --i) acc = acc * x + coeffs[i - 1];
  return acc;
}

Poly Poly::derivative() const {
  Poly d;
  if (coeffs.size() <= 1) return d;
  d.coeffs.resize(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    d.coeffs[i - 1] = static_cast<double>(i) * coeffs[i];
  return d;
}

Poly hermite(unsigned n) {
  require_degree(n, "hermite");
  Poly h;
  h.coeffs = {cplx{1.0, 0.0}};
  for (unsigned k = 1; k <= n; ++k) {
    const Poly dh = h.derivative();
    Poly next;
    next.coeffs.assign(k + 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < h.coeffs.size(); ++i)
      next.coeffs[i + 1] = 2.0 * h.coeffs[i];
    for (std::size_t i = 0; i < dh.coeffs.size(); ++i)
      next.coeffs[i] -= dh.coeffs[i];
    h = std::move(next);
  }
  return h;
}

cplx hermite_eval(unsigned n, cplx x) {
  require_degree(n, "hermite_eval");
  if (n == 0) return {1.0, 0.0};
  cplx prev{1.0, 0.0};
  cplx cur = 2.0 * x;
  for (unsigned k = 1; k < n; ++k) {
    const cplx next = 2.0 * x * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Poly generalized_hermite(unsigned n, cplx delta) {
  require_degree(n, "generalized_hermite");
  if (delta == cplx{0.0, 0.0})
    throw ZeroDelta("generalized_hermite: delta must be nonzero");
  Poly p;
  p.coeffs.assign(n + 1, cplx{0.0, 0.0});
  const double two_n = std::pow(2.0, static_cast<double>(n));
  cplx delta_pow{1.0, 0.0};
  double sign = 1.0;
  double four_pow = 1.0;
  for (unsigned k = 0; 2 * k <= n; ++k) {
    p.coeffs[n - 2 * k] = sign * two_n * factorial(n) /
                          (four_pow * factorial(k) * factorial(n - 2 * k)) /
                          delta_pow;
    sign = -sign;
    four_pow *= 4.0;
    delta_pow *= delta;
  }
  return p;
}

cplx gaussian_moment(unsigned n, cplx mu, cplx z) {
  if (mu.real() <= 0.0)
    throw NonPositiveRealPart("gaussian_moment: Re mu must be positive");
  const std::vector<cplx> zp = powers(z, n);
  // gamma_half = Gamma((k+1)/2) for the current even k, advanced by the
  // ratio (k+1)/2 per step of two.
  double gamma_half = std::sqrt(kPi);
  cplx mu_pow = principal_sqrt(mu);  // principal_sqrt(mu)^{k+1}
  cplx acc{0.0, 0.0};
  for (unsigned k = 0; k <= n; k += 2) {
    const double parity = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    acc += parity * factorial(n) * gamma_half /
           (factorial(k) * factorial(n - k)) / mu_pow * zp[n - k];
    gamma_half *= (k + 1) / 2.0;
    mu_pow *= mu;
  }
  return acc;
}

cplx hermite_gaussian_integral(unsigned n, cplx delta, cplx mu, cplx a,
                               cplx z) {
  if (mu.real() <= 0.0)
    throw NonPositiveRealPart(
        "hermite_gaussian_integral: Re mu must be positive");
  if (delta == cplx{0.0, 0.0})
    throw ZeroDelta("hermite_gaussian_integral: delta must be nonzero");
  const double two_n = std::pow(2.0, static_cast<double>(n));
  const double root_pi = std::sqrt(kPi);
  const cplx root_mu = principal_sqrt(mu);
  const cplx ratio = 1.0 - delta / mu;
  const std::vector<cplx> ap = powers(a, n);
  const std::vector<cplx> zp = powers(z, n);
  cplx acc{0.0, 0.0};
  double sign = 1.0;
  double four_pow = 1.0;
  cplx ratio_pow{1.0, 0.0};
  cplx delta_pow{1.0, 0.0};
  for (unsigned k = 0; 2 * k <= n; ++k) {
    const unsigned m = n - 2 * k;
    acc += sign * two_n * factorial(n) * ap[m] * root_pi * ratio_pow /
           (four_pow * factorial(k) * factorial(m) * delta_pow * root_mu) *
           zp[m];
    sign = -sign;
    four_pow *= 4.0;
    ratio_pow *= ratio;
    delta_pow *= delta;
  }
  return acc;
}

cplx solve_nu_for_delta(cplx mu, cplx a, cplx b, cplx delta) {
  // delta = (b^2-a^2) mu nu / (nu b^2 - mu a^2), solved for nu.
  const cplx denom = delta * b * b - (b * b - a * a) * mu;
  if (denom == cplx{0.0, 0.0})
    throw HypothesisViolation("solve_nu_for_delta: parameters admit no nu");
  return delta * mu * a * a / denom;
}

double verify_integral_equation(const IntegralEqParams& p, const Poly& P,
                                const QuadratureRule& rule) {
  std::string failures;
  auto fail = [&failures](const std::string& what) {
    if (!failures.empty()) failures += "; ";
    failures += what;
  };
  if (!(p.mu.real() > 0.0)) fail("Re mu must be positive");
  if (!(p.nu.real() > 0.0)) fail("Re nu must be positive");
  if (p.a == cplx{0.0, 0.0}) fail("a must be nonzero");
  if (p.b == cplx{0.0, 0.0}) fail("b must be nonzero");
  const cplx gap = p.nu * p.b * p.b - p.mu * p.a * p.a;
  if (std::abs(gap) <=
      1e-12 * (std::abs(p.nu * p.b * p.b) + std::abs(p.mu * p.a * p.a)))
    fail("nu b^2 must differ from mu a^2");
  else {
    const cplx delta_implied = (p.b * p.b - p.a * p.a) * p.mu * p.nu / gap;
    if (std::abs(p.delta - delta_implied) > 1e-10 * (1.0 + std::abs(p.delta)))
      fail("delta inconsistent with (mu, nu, a, b)");
  }
  cplx ak{1.0, 0.0}, bk{1.0, 0.0};
  for (unsigned k = 1; k <= p.n; ++k) {
    ak *= p.a;
    bk *= p.b;
    if (std::abs(ak - bk) <= 1e-12 * (std::abs(ak) + std::abs(bk))) {
      fail("a^k = b^k at k = " + std::to_string(k));
      break;
    }
  }
  if (P.degree() != static_cast<int>(p.n))
    fail("deg P = " + std::to_string(P.degree()) + ", expected " +
         std::to_string(p.n));
  if (!failures.empty())
    throw HypothesisViolation("verify_integral_equation: " + failures);

  cplx ab_ratio{1.0, 0.0};
  for (unsigned k = 0; k < p.n; ++k) ab_ratio *= p.a / p.b;
  const cplx c_n = principal_sqrt(p.nu) / principal_sqrt(p.mu) * ab_ratio;
  const auto f = [&P](double x) { return P.eval(cplx{x, 0.0}); };

  double worst = 0.0;
  for (int j = 1; j <= 10; ++j) {
    const double r = 0.12 * j;
    const cplx z = r * std::exp(cplx{0.0, 0.7 * j});
    const cplx lhs = integrate_gaussian_R(f, p.mu, p.a * z, rule);
    const cplx rhs = integrate_gaussian_R(f, p.nu, p.b * z, rule);
    const double denom = std::abs(lhs) + std::abs(rhs);
    if (denom == 0.0) continue;
    worst = std::max(worst, std::abs(lhs - c_n * rhs) / denom);
  }
  return worst;
}

}  // namespace fockcanon
