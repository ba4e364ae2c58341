#include "fockcanon/lct_real.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fockcanon/canonical_operator.hpp"

namespace fockcanon {

SampledRealFunction SampledRealFunction::sample(
    const std::function<cplx(double)>& f, double lo, double hi,
    std::size_t n) {
  if (n < 2 || !(hi > lo))
    throw UsageError("SampledRealFunction::sample: need hi > lo and n >= 2");
  SampledRealFunction out;
  out.weight_kind = WeightKind::Uniform;
  out.grid.resize(n);
  out.values.resize(n);
  out.weights.resize(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.grid[i] = lo + h * static_cast<double>(i);
    out.values[i] = f(out.grid[i]);
    out.weights[i] = (i == 0 || i == n - 1) ? h / 2.0 : h;
  }
  return out;
}

SampledRealFunction SampledRealFunction::sample_gauss_hermite(
    const std::function<cplx(double)>& f, const QuadratureRule& rule) {
  SampledRealFunction out;
  out.weight_kind = WeightKind::GaussHermite;
  const std::size_t n = rule.size();
  out.grid.resize(n);
  out.values.resize(n);
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rule.nodes_1d[i];
    out.grid[i] = x;
    out.values[i] = f(x);
    out.weights[i] = rule.weights_1d[i] * std::exp(x * x);
  }
  return out;
}

double SampledRealFunction::spacing() const {
  if (weight_kind != WeightKind::Uniform || grid.size() < 2)
    throw UsageError("spacing: defined for uniform grids of size >= 2 only");
  return grid[1] - grid[0];
}

double SampledRealFunction::quad_weight(std::size_t i) const {
  return weights.at(i);
}

cplx SampledRealFunction::interpolate(double x) const {
  if (grid.empty() || x < grid.front() || x > grid.back()) return {0.0, 0.0};
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  if (it == grid.begin()) return values.front();
  if (it == grid.end()) return values.back();
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const double span = grid[hi] - grid[lo];
  const double w = (x - grid[lo]) / span;
  return (1.0 - w) * values[lo] + w * values[hi];
}

cplx SampledRealFunction::integrate(
    const std::function<cplx(double, cplx)>& term) const {
  cplx acc{0.0, 0.0};
  cplx comp{0.0, 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx v = weights[i] * term(grid[i], values[i]);
    const cplx y = v - comp;
    const cplx t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return acc;
}

double SampledRealFunction::norm_l2() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    acc += weights[i] * std::norm(values[i]);
  return std::sqrt(acc);
}

void validate(const SampledRealFunction& f) {
  if (f.grid.size() < 16)
    throw UsageError("SampledRealFunction: need at least 16 nodes");
  if (f.values.size() != f.grid.size() || f.weights.size() != f.grid.size())
    throw UsageError("SampledRealFunction: grid/values/weights lengths differ");
  for (std::size_t i = 0; i + 1 < f.grid.size(); ++i)
    if (!(f.grid[i] < f.grid[i + 1]))
      throw UsageError("SampledRealFunction: grid must be strictly increasing");
  for (const cplx& v : f.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw UsageError("SampledRealFunction: non-finite sample value");
}

namespace {

void require_unit_det(const RealSymplecticMatrix& A, const char* context) {
  if (std::abs(A.det() - 1.0) > tol_group)
    throw SingularDet(std::string(context) + ": det = " +
                      std::to_string(A.det()) + ", expected 1");
}

double max_spacing(const SampledRealFunction& f) {
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < f.grid.size(); ++i)
    h = std::max(h, f.grid[i + 1] - f.grid[i]);
  return h;
}

}  // namespace

cplx lct_apply(const RealSymplecticMatrix& A, const SampledRealFunction& f,
               double x) {
  require_unit_det(A, "lct_apply");
  if (f.grid.size() < 2)
    throw UsageError("lct_apply: sampled function needs at least 2 nodes");
  if (A.b == 0.0) {
    const cplx root_d = principal_sqrt(cplx{A.d, 0.0});
    return root_d * std::exp(cplx{0.0, A.c * A.d * x * x}) *
           f.interpolate(A.d * x);
  }

  const double span = std::max(std::abs(f.grid.front()), std::abs(f.grid.back()));
  const double omega = (2.0 * std::abs(x) + 2.0 * std::abs(A.a) * span) /
                       std::abs(A.b);
  if (omega * max_spacing(f) > kPi / 2.0)
    throw OscillationBudgetExceeded(
        "lct_apply: kernel frequency " + std::to_string(omega) +
        " is not resolvable on the grid");

  const double inv_b = 1.0 / A.b;
  const cplx integral = f.integrate([&](double t, cplx v) {
    return v * std::exp(cplx{0.0, -(2.0 * x * t - A.a * t * t) * inv_b});
  });
  const cplx prefactor =
      1.0 / principal_sqrt(cplx{0.0, kPi * A.b}) *
      std::exp(cplx{0.0, A.d * x * x * inv_b});
  return prefactor * integral;
}

cplx frft(double alpha, const SampledRealFunction& f, double x) {
  if (alpha == 0.0) return f.interpolate(x);
  if (alpha == kPi || alpha == -kPi) return f.interpolate(-x);
  // sin(alpha) vanishes only at the multiples of pi handled above.
  const RealSymplecticMatrix A{std::cos(alpha), std::sin(alpha),
                               -std::sin(alpha), std::cos(alpha)};
  return std::exp(cplx{0.0, alpha / 2.0}) * lct_apply(A, f, x);
}

cplx bargmann(const SampledRealFunction& f, cplx z) {
  const double kC = std::pow(2.0 / kPi, 0.25);
  const cplx tail = std::exp(-z * z / 2.0);
  const cplx integral = f.integrate([&](double x, cplx v) {
    return v * std::exp(2.0 * x * z - x * x);
  });
  const cplx result = kC * tail * integral;
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
    throw NonFiniteIntegrand("bargmann: non-finite result");
  return result;
}

cplx inverse_bargmann(const std::function<cplx(cplx)>& F, double x,
                      const QuadratureRule& rule) {
  const double kC = std::pow(2.0 / kPi, 0.25);
  const cplx integral = integrate_gaussian_C(
      [&](cplx z) {
        const cplx zbar = std::conj(z);
        return F(z) * std::exp(2.0 * x * zbar - zbar * zbar / 2.0);
      },
      rule);
  return kC * std::exp(-x * x) * integral;
}

Sign bargmann_sign(const RealSymplecticMatrix& A) {
  require_unit_det(A, "bargmann_sign");
  const GroupElement g = phi(A);
  const cplx s = g.s;
  cplx c;
  if (A.b != 0.0) {
    const cplx u = s + g.t - std::conj(s) - std::conj(g.t);  // = 2bi
    c = principal_sqrt(s) / principal_sqrt(u) * principal_sqrt(u / s);
  } else {
    const cplx st = s + g.t;  // = a, real
    c = principal_sqrt(s) * principal_sqrt(1.0 / st) * principal_sqrt(st / s);
  }
  return assert_unit_sign(c, "bargmann_sign");
}

Sign lct_inverse_sign(const RealSymplecticMatrix& A) {
  require_unit_det(A, "lct_inverse_sign");
  return Sign{(A.a < 0.0 && A.b == 0.0) ? -1 : +1};
}

double verify_conjugation(const RealSymplecticMatrix& A, const Poly& f,
                          const std::vector<cplx>& zs,
                          const QuadratureRule& rule) {
  const Sign sign = bargmann_sign(A);
  const GroupElement g = phi(A);
  const auto fz = [&f](cplx z) { return f.eval(z); };
  const auto pre_image = [&](double x) {
    return inverse_bargmann(fz, x, rule);
  };

  SampledRealFunction outer;
  if (A.b == 0.0) {
    // Interpolating the middle leg would cost ~1e-4 accuracy; the b = 0
    // transform only needs B^{-1}f at d*x, which is available exactly.
    const cplx root_d = principal_sqrt(cplx{A.d, 0.0});
    outer = SampledRealFunction::sample(
        [&](double x) {
          return root_d * std::exp(cplx{0.0, A.c * A.d * x * x}) *
                 pre_image(A.d * x);
        },
        -9.0, 9.0, 721);
  } else {
    const SampledRealFunction mid =
        SampledRealFunction::sample(pre_image, -8.0, 8.0, 641);
    outer = SampledRealFunction::sample(
        [&](double x) { return lct_apply(A, mid, x); }, -9.0, 9.0, 721);
  }

  double worst = 0.0;
  for (const cplx& z : zs) {
    const cplx lhs = bargmann(outer, z);
    const cplx rhs = apply(g, fz, z, rule);
    worst = std::max(worst,
                     std::abs(lhs - sign.as_double() * rhs) /
                         (1.0 + std::abs(rhs)));
  }
  return worst;
}

std::function<cplx(double)> hermite_gaussian(unsigned n) {
  double norm = std::pow(2.0 / kPi, 0.25);
  for (unsigned k = 1; k <= n; ++k)
    norm /= std::sqrt(2.0 * static_cast<double>(k));
  const double root2 = std::sqrt(2.0);
  return [norm, root2, n](double x) {
    return norm * hermite_eval(n, cplx{root2 * x, 0.0}) *
           std::exp(-x * x);
  };
}

}  // namespace fockcanon
