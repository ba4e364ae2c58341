#include "fockcanon/verify.hpp"

#include <algorithm>
#include <cmath>

#include "fockcanon/canonical_operator.hpp"
#include "fockcanon/lct_real.hpp"
#include "fockcanon/spectral.hpp"

namespace fockcanon {

double Rng::uniform01() {
  // 53-bit mantissa extraction; uniform_real_distribution is not bit-exact
  // across standard libraries, this is.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

namespace {

void push(std::vector<CheckResult>& out, const std::string& id,
          const std::string& description, double measured, double expected,
          double tolerance, const std::string& semantics) {
  CheckResult r;
  r.check_id = id;
  r.description = description;
  r.measured = measured;
  r.expected = expected;
  r.tolerance = tolerance;
  r.semantics = semantics;
  if (semantics == "gt")
    r.pass = measured > expected;
  else if (semantics == "rel")
    r.pass = std::abs(measured - expected) <=
             tolerance * std::max(std::abs(expected), 1e-300);
  else
    r.pass = std::abs(measured - expected) <= tolerance;
  out.push_back(std::move(r));
}

cplx unit_phase(Rng& rng) {
  return std::exp(cplx{0.0, rng.uniform(-kPi, kPi)});
}

GroupElement random_sl(Rng& rng, double tmin, double tmax) {
  const double tm = rng.uniform(tmin, tmax);
  const cplx t = tm * unit_phase(rng);
  const cplx s = std::sqrt(1.0 + tm * tm) * unit_phase(rng);
  return {s, t};
}

RealSymplecticMatrix random_gl2(Rng& rng) {
  for (;;) {
    RealSymplecticMatrix A{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                           rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    // Both orientations belong to the group; only near-singular draws are
    // rejected, they make the round trip ill-conditioned.
    if (std::abs(A.det()) > 0.1) return A;
  }
}

std::size_t scaled_nodes(const GroupElement& g, std::size_t base) {
  // Integrands against the kernel decay like e^{-(1-|t|/(2|s|))|w|^2} at
  // worst; stretch the rule to keep the effective resolution fixed.
  const double shrink = 1.0 - std::abs(g.t) / (2.0 * std::abs(g.s));
  return static_cast<std::size_t>(
      std::ceil(static_cast<double>(base) / shrink));
}

std::vector<cplx> spiral_points(int count, double radius) {
  std::vector<cplx> zs(count);
  for (int j = 0; j < count; ++j)
    zs[j] = radius * (j + 1.0) / count * std::exp(cplx{0.0, 2.4 * j});
  return zs;
}

double max_abs_diff(const GroupElement& a, const GroupElement& b) {
  return std::max(std::abs(a.s - b.s), std::abs(a.t - b.t));
}

// 1. The bijection with GL(2,R)+ transports the group law.
void criterion_1(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 1);
  double hom = 0.0, rt = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RealSymplecticMatrix A1 = random_gl2(rng);
    const RealSymplecticMatrix A2 = random_gl2(rng);
    hom = std::max(hom, max_abs_diff(phi(matmul(A1, A2)),
                                     compose(phi(A1), phi(A2))));
    const RealSymplecticMatrix B = phi_inverse(phi(A1));
    rt = std::max({rt, std::abs(B.a - A1.a), std::abs(B.b - A1.b),
                   std::abs(B.c - A1.c), std::abs(B.d - A1.d)});
  }
  push(out, "1a", "group law transported through the GL(2,R) bijection", hom,
       0.0, 1e-12, "abs");
  push(out, "1b", "round trip matrix -> (s,t) -> matrix is the identity", rt,
       0.0, 1e-12, "abs");
}

// 2. Squared Hilbert-Schmidt norm: closed form vs double quadrature and
// matrix partial sums.
void criterion_2(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  const GroupElement cases[3] = {{cplx{2.0, 0.0}, cplx{0.0, 0.0}},
                                 {cplx{2.0, 0.0}, cplx{1.0, 0.0}},
                                 {cplx{3.0, 0.0}, cplx{0.0, 2.0}}};
  const char* labels[3] = {"(2,0)", "(2,1)", "(3,2i)"};
  for (int i = 0; i < 3; ++i) {
    const GroupElement& g = cases[i];
    const double closed = hs_norm_sq(g);
    const QuadratureRule rule =
        QuadratureRule::gauss_hermite(scaled_nodes(g, opt.nodes));
    const double quad = hs_norm_sq_quadrature(g, rule);
    push(out, std::string("2") + static_cast<char>('a' + i),
         std::string("squared HS norm by double quadrature, (s,t)=") +
             labels[i],
         quad, closed, 1e-5, "rel");
    const Eigen::MatrixXcd M = matrix(g, 60);
    const double sum = M.squaredNorm();
    push(out, std::string("2") + static_cast<char>('d' + i),
         std::string("squared HS norm by matrix partial sum, (s,t)=") +
             labels[i],
         sum, closed, 1e-3, "rel");
  }
}

// 3. Truncated matrices of unitary operators are unitary away from the
// truncation edge. The sampler stays at |t| <= 0.4: column n of M carries
// its mass near row (1+2|t|^2) n, so at N = 64 the 16x16 block of M*M is
// complete only for moderate |t| (larger |t| needs N beyond 256; the module
// tests cover that range with adaptive truncation).
void criterion_3(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 3);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const GroupElement g = random_sl(rng, 0.05, 0.4);
    const Eigen::MatrixXcd M = matrix(g, 64);
    const Eigen::MatrixXcd gram = M.adjoint() * M;
    const Eigen::MatrixXcd defect =
        gram.block(0, 0, 16, 16) - Eigen::MatrixXcd::Identity(16, 16);
    worst = std::max(worst, defect.cwiseAbs().maxCoeff());
  }
  push(out, "3a",
       "unitarity of 20 truncated operator matrices on the 16x16 block",
       worst, 0.0, 1e-6, "abs");
}

// 4. Matrix products realize the projective representation with the
// computed sign.
void criterion_4(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 4);
  double worst = 0.0;
  int sign_mismatches = 0;
  for (int i = 0; i < 10; ++i) {
    const GroupElement g1 = random_sl(rng, 0.05, 0.5);
    const GroupElement g2 = random_sl(rng, 0.05, 0.5);
    const Sign sign = cocycle(g1, g2);
    const Eigen::MatrixXcd P = matrix(g1, 64) * matrix(g2, 64);
    const Eigen::MatrixXcd M12 = matrix(compose(g1, g2), 64);
    const Eigen::MatrixXcd defect =
        P.block(0, 0, 12, 12) -
        sign.as_double() * M12.block(0, 0, 12, 12);
    worst = std::max(worst, defect.cwiseAbs().maxCoeff());
    // The realized sign is read off the (0,0) entries; M_{00} = s^{-1/2} is
    // never zero.
    const double realized = ((P(0, 0) / M12(0, 0)).real() >= 0.0) ? 1.0 : -1.0;
    if (realized != sign.as_double()) ++sign_mismatches;
  }
  push(out, "4a",
       "matrix products match the composed operator on the 12x12 block",
       worst, 0.0, 1e-5, "abs");
  push(out, "4b", "realized composition sign equals the computed cocycle",
       static_cast<double>(sign_mismatches), 0.0, 0.0, "abs");
}

// 5. Eigenvalues and eigenfunctions at (i sqrt 2, 1), plus the rotation
// family.
void criterion_5(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  const GroupElement g{cplx{0.0, std::sqrt(2.0)}, cplx{1.0, 0.0}};
  const QuadratureRule rule =
      QuadratureRule::gauss_hermite(scaled_nodes(g, opt.nodes));

  double mod_defect = 0.0, val_defect = 0.0, res_defect = 0.0;
  for (unsigned n = 0; n <= 8; ++n) {
    const cplx lambda = eigenvalue(g, n);
    mod_defect = std::max(mod_defect, std::abs(std::abs(lambda) - 1.0));
    const cplx expected = std::exp(cplx{0.0, -kPi / 4.0 - kPi * n / 2.0});
    val_defect = std::max(val_defect, std::abs(lambda - expected));
    res_defect = std::max(res_defect, eigen_residual(g, n, rule));
  }
  push(out, "5a", "|lambda_n| = 1 at (s,t) = (i sqrt 2, 1), n <= 8",
       mod_defect, 0.0, 1e-10, "abs");
  push(out, "5b", "lambda_n = e^{-i pi/4} e^{-i pi n/2} at (i sqrt 2, 1)",
       val_defect, 0.0, 1e-10, "abs");
  push(out, "5c", "eigenfunction residual |T f_n - lambda_n f_n| / max|f_n|",
       res_defect, 0.0, 1e-6, "abs");

  double rot_defect = 0.0;
  for (const double alpha : {kPi / 3.0, -1.1, 2.0}) {
    const GroupElement r{std::exp(cplx{0.0, alpha}), cplx{0.0, 0.0}};
    const Eigen::MatrixXcd M = matrix(r, 9);
    for (unsigned n = 0; n <= 8; ++n) {
      const cplx expected = std::exp(cplx{0.0, -alpha * (n + 0.5)});
      rot_defect = std::max(rot_defect,
                            std::abs(eigenvalue(r, n) - expected));
      rot_defect = std::max(rot_defect, std::abs(M(n, n) - expected));
    }
  }
  push(out, "5d",
       "rotation operators are diagonal with entries e^{-i alpha (n+1/2)}",
       rot_defect, 0.0, 1e-10, "abs");
}

// 6. The generalized Hermite family solves its integral equation and is the
// same polynomial whether built from the closed form or the recursion.
void criterion_6(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 6);

  double worst_good = 0.0;
  double best_bad = 1e300;
  for (int set = 0; set < 10; ++set) {
    const bool classical = set < 5;
    cplx mu, nu, delta;
    double a = 0.0, b = 0.0;
    for (int tries = 0;; ++tries) {
      mu = cplx{rng.uniform(0.7, 1.25), rng.uniform(-0.3, 0.3)};
      a = rng.uniform(0.5, 1.0);
      b = a * rng.uniform(1.4, 2.0);
      delta = classical ? cplx{1.0, 0.0}
                        : cplx{rng.uniform(0.6, 1.8), 0.0};
      if (!classical && std::abs(delta - cplx{1.0, 0.0}) < 0.1) continue;
      nu = solve_nu_for_delta(mu, cplx{a, 0.0}, cplx{b, 0.0}, delta);
      // Conditioning window. Below 0.55 the right-hand Gaussian is so wide
      // that its integral dwarfs a +x perturbation of the solution and the
      // relative residual loses the 1e-3 detectability this criterion
      // asserts; far above 3 the induced parameters drift toward the
      // delta-consistency boundary.
      if (nu.real() > 0.55 && nu.real() < 3.0) break;
      if (tries > 100)
        throw BranchFailure("criterion 6: no admissible nu found");
    }
    // Quadratic phase under the Gaussian envelope slows Gauss-Hermite
    // convergence; nodes scale with the squared quality factor |.|/Re.
    const double q_mu = std::abs(mu) / mu.real();
    const double q_nu = std::abs(nu) / nu.real();
    const double q = std::max({1.0, q_mu * q_mu, q_nu * q_nu});
    const QuadratureRule rule = QuadratureRule::gauss_hermite(
        static_cast<std::size_t>(std::ceil(static_cast<double>(opt.nodes) * q)));
    for (unsigned n = 0; n <= 6; ++n) {
      IntegralEqParams p;
      p.mu = mu;
      p.nu = nu;
      p.a = cplx{a, 0.0};
      p.b = cplx{b, 0.0};
      p.n = n;
      p.delta = delta;
      const Poly good = generalized_hermite(n, delta);
      worst_good = std::max(worst_good, verify_integral_equation(p, good, rule));
      if (n >= 2) {
        Poly bad = good;
        bad.coeffs[1] += 1.0;  // adds x; keeps the degree
        best_bad = std::min(best_bad, verify_integral_equation(p, bad, rule));
      }
    }
  }
  push(out, "6a",
       "integral-equation residual for the generalized Hermite solutions",
       worst_good, 0.0, 1e-8, "abs");
  push(out, "6b", "perturbing the solution by x breaks the equation",
       best_bad, 1e-3, 0.0, "gt");

  double coeff_defect = 0.0;
  for (const cplx delta : {cplx{1.0, 0.0}, cplx{2.0, 0.0}, cplx{0.5, 0.0}}) {
    Poly p;
    p.coeffs = {cplx{1.0, 0.0}};
    for (unsigned n = 1; n <= 12; ++n) {
      // P_n = 2x P_{n-1} - (1/delta) P_{n-1}'
      const Poly dp = p.derivative();
      Poly next;
      next.coeffs.assign(n + 1, cplx{0.0, 0.0});
      for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        next.coeffs[i + 1] = 2.0 * p.coeffs[i];
      for (std::size_t i = 0; i < dp.coeffs.size(); ++i)
        next.coeffs[i] -= dp.coeffs[i] / delta;
      p = std::move(next);
      const Poly closed = generalized_hermite(n, delta);
      for (std::size_t i = 0; i <= n; ++i)
        coeff_defect =
            std::max(coeff_defect, std::abs(closed.coeffs[i] - p.coeffs[i]));
    }
  }
  push(out, "6c",
       "closed-form coefficients equal the recursion exactly, n <= 12",
       coeff_defect, 0.0, 0.0, "abs");
}

// 7. Gaussian moments and the Hermite-Gaussian integral against 1-D
// quadrature.
void criterion_7(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  Rng rng(opt.seed * 1000 + 7);
  const QuadratureRule rule = QuadratureRule::gauss_hermite(opt.nodes);
  double moment_defect = 0.0, hgi_defect = 0.0;
  for (int run = 0; run < 10; ++run) {
    const cplx mu{rng.uniform(0.7, 1.5), rng.uniform(-0.4, 0.4)};
    const cplx a{rng.uniform(0.5, 1.2), rng.uniform(-0.3, 0.3)};
    const cplx delta{rng.uniform(0.6, 1.8), rng.uniform(-0.3, 0.3)};
    const cplx z = rng.uniform(0.2, 2.0) * unit_phase(rng);
    for (unsigned n = 0; n <= 10; ++n) {
      const cplx closed_m = gaussian_moment(n, mu, z);
      const cplx quad_m = integrate_gaussian_R(
          [n](double x) {
            cplx p{1.0, 0.0};
            for (unsigned k = 0; k < n; ++k) p *= x;
            return p;
          },
          mu, -z, rule);
      moment_defect =
          std::max(moment_defect, std::abs(closed_m - quad_m) / std::abs(quad_m));

      const Poly P = generalized_hermite(n, delta);
      const cplx closed_h = hermite_gaussian_integral(n, delta, mu, a, z);
      const cplx quad_h = integrate_gaussian_R(
          [&P](double x) { return P.eval(cplx{x, 0.0}); }, mu, a * z, rule);
      hgi_defect =
          std::max(hgi_defect, std::abs(closed_h - quad_h) / std::abs(quad_h));
    }
  }
  push(out, "7a", "Gaussian moment closed form vs quadrature, n <= 10",
       moment_defect, 0.0, 1e-8, "abs");
  push(out, "7b",
       "Hermite-Gaussian integral closed form vs quadrature, n <= 10",
       hgi_defect, 0.0, 1e-8, "abs");
}

// 8. The Bargmann transform conjugates linear canonical transforms into
// canonical integral operators with the computed sign.
void criterion_8(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  const QuadratureRule rule = QuadratureRule::gauss_hermite(opt.nodes);
  const std::vector<cplx> zs = spiral_points(20, 1.5);

  Poly f;
  f.coeffs = {cplx{1.0, 0.0},  cplx{1.0, 0.0},   cplx{0.5, 0.0},
              cplx{-0.3, 0.2}, cplx{0.2, 0.0},   cplx{0.0, 0.1},
              cplx{-0.15, 0.0}};

  const double alpha = kPi / 3.0;
  const double r = 1.5;
  const RealSymplecticMatrix rotation{std::cos(alpha), std::sin(alpha),
                                      -std::sin(alpha), std::cos(alpha)};
  const RealSymplecticMatrix dilation{r, 0.0, 0.0, 1.0 / r};
  const RealSymplecticMatrix fresnel{1.0, 0.7, 0.0, 1.0};
  const RealSymplecticMatrix chirp{1.0, 0.0, 0.6, 1.0};

  double worst = 0.0;
  for (const RealSymplecticMatrix& A : {rotation, dilation, fresnel, chirp})
    worst = std::max(worst, verify_conjugation(A, f, zs, rule));
  push(out, "8a",
       "Bargmann conjugation residual over rotation, dilation, Fresnel, "
       "chirp",
       worst, 0.0, 1e-5, "abs");

  // Fractional-transform specialization: conjugating F^alpha acts on Fock
  // space as f -> f(e^{-i alpha} z) with no prefactor.
  const SampledRealFunction mid = SampledRealFunction::sample(
      [&](double x) {
        return inverse_bargmann([&f](cplx z) { return f.eval(z); }, x, rule);
      },
      -8.0, 8.0, 641);
  const SampledRealFunction outer = SampledRealFunction::sample(
      [&](double x) { return frft(alpha, mid, x); }, -9.0, 9.0, 721);
  const cplx rot_phase = std::exp(cplx{0.0, -alpha});
  double frft_defect = 0.0;
  for (const cplx& z : zs) {
    const cplx lhs = bargmann(outer, z);
    const cplx target = f.eval(rot_phase * z);
    frft_defect = std::max(
        frft_defect, std::abs(lhs - target) / (1.0 + std::abs(target)));
  }
  push(out, "8b",
       "conjugated fractional Fourier transform rotates the argument",
       frft_defect, 0.0, 1e-5, "abs");
}

// 9. Bargmann unitarity on Hermite-Gaussian pairs and the round trip.
void criterion_9(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  const QuadratureRule rule = QuadratureRule::gauss_hermite(opt.nodes);
  const std::size_t m = rule.size();

  std::vector<SampledRealFunction> psi;
  for (unsigned n = 0; n <= 4; ++n)
    psi.push_back(
        SampledRealFunction::sample(hermite_gaussian(n), -8.0, 8.0, 641));

  // Transform values at the 2-D rule nodes, one pass per n.
  std::vector<std::vector<cplx>> bvals(psi.size(),
                                       std::vector<cplx>(m * m));
  for (std::size_t n = 0; n < psi.size(); ++n)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        bvals[n][i * m + j] =
            bargmann(psi[n], cplx{rule.nodes_1d[i], rule.nodes_1d[j]});

  double pair_defect = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    for (std::size_t k = 0; k < psi.size(); ++k) {
      cplx acc{0.0, 0.0};
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          acc += rule.weights_1d[i] * rule.weights_1d[j] *
                 bvals[n][i * m + j] * std::conj(bvals[k][i * m + j]);
      acc /= kPi;
      const double target = (n == k) ? 1.0 : 0.0;
      pair_defect = std::max(pair_defect, std::abs(acc - target));
    }
  }
  push(out, "9a",
       "Bargmann transform preserves Hermite-Gaussian inner products",
       pair_defect, 0.0, 1e-6, "abs");

  double rt_defect = 0.0;
  const double xs[6] = {-2.1, -1.3, -0.4, 0.3, 1.1, 1.9};
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const SampledRealFunction& p = psi[n];
    const auto F = [&p](cplx z) { return bargmann(p, z); };
    const auto direct = hermite_gaussian(static_cast<unsigned>(n));
    for (const double x : xs)
      rt_defect = std::max(rt_defect,
                           std::abs(inverse_bargmann(F, x, rule) - direct(x)));
  }
  push(out, "9b", "inverse Bargmann transform undoes the forward transform",
       rt_defect, 0.0, 1e-6, "abs");
}

// 10. Unbounded regime: the reproducing-kernel image outgrows every multiple
// of e^{|u|^2/2} along the maximizing ray.
void criterion_10(std::vector<CheckResult>& out, const VerifyOptions&) {
  const GroupElement g{cplx{1.0, 0.0}, cplx{0.5, 0.0}};
  double ratios[4];
  const double ks[4] = {1.0, 2.0, 4.0, 8.0};
  for (int i = 0; i < 4; ++i) {
    // The quadratic exponent in kernel_norm is maximized along arg u = 0
    // for these parameters (positive real coefficient).
    const cplx u{ks[i], 0.0};
    ratios[i] = kernel_norm(g, u) / std::exp(std::norm(u) / 2.0);
  }
  double min_step = 1e300;
  for (int i = 1; i < 4; ++i)
    min_step = std::min(min_step, ratios[i] - ratios[i - 1]);
  push(out, "10a",
       "kernel-norm ratio strictly increasing along the maximizing ray",
       min_step, 0.0, 0.0, "gt");
  push(out, "10b", "kernel-norm ratio at |u| = 8 exceeds 1000", ratios[3],
       1000.0, 0.0, "gt");
}

}  // namespace

std::vector<CheckResult> run_acceptance(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  criterion_1(out, opt);
  criterion_2(out, opt);
  criterion_3(out, opt);
  criterion_4(out, opt);
  criterion_5(out, opt);
  criterion_6(out, opt);
  criterion_7(out, opt);
  criterion_8(out, opt);
  criterion_9(out, opt);
  criterion_10(out, opt);
  return out;
}

std::vector<CheckResult> run_acceptance(const VerifyOptions& opt,
                                        int criterion) {
  using Fn = void (*)(std::vector<CheckResult>&, const VerifyOptions&);
  static constexpr Fn table[10] = {
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  if (criterion < 1 || criterion > 10)
    throw UsageError("run_acceptance: criterion must be in [1, 10]");
  std::vector<CheckResult> out;
  table[criterion - 1](out, opt);
  return out;
}

}  // namespace fockcanon
