#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "fockcanon/canonical_operator.hpp"
#include "fockcanon/errors.hpp"

using fockcanon::adjoint_params;
using fockcanon::apply;
using fockcanon::apply_to_basis;
using fockcanon::basis_e;
using fockcanon::classify;
using fockcanon::compose;
using fockcanon::compose_operators;
using fockcanon::cplx;
using fockcanon::GroupElement;
using fockcanon::hs_norm_sq;
using fockcanon::hs_norm_sq_quadrature;
using fockcanon::kernel_eval;
using fockcanon::kernel_norm;
using fockcanon::kPi;
using fockcanon::matrix;
using fockcanon::MatrixMethod;
using fockcanon::OperatorClass;
using fockcanon::principal_sqrt;
using fockcanon::QuadratureRule;
using fockcanon::Sign;

namespace {

double dist(cplx a, cplx b) { return std::abs(a - b); }

// Node count scaled for the e^{-(1-|t|/(2|s|))|w|^2} worst-case decay of the
// lambda-measure integrands.
QuadratureRule scaled_rule(const GroupElement& g, std::size_t base) {
  const double margin = 1.0 - std::abs(g.t) / (2.0 * std::abs(g.s));
  return QuadratureRule::gauss_hermite(
      static_cast<std::size_t>(std::ceil(static_cast<double>(base) / margin)));
}

GroupElement random_sl(std::mt19937& gen, double tmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = tmax * u(gen);
  const cplx t = r * std::exp(cplx{0.0, 2.0 * kPi * u(gen) - kPi});
  const cplx s = std::sqrt(1.0 + r * r) *
                 std::exp(cplx{0.0, 2.0 * kPi * u(gen) - kPi});
  return GroupElement{s, t};
}

}  // namespace

TEST_CASE("classification trichotomy") {
  CHECK(classify(GroupElement{{1.0, 0.0}, {0.0, 0.0}}) == OperatorClass::Unitary);
  CHECK(classify(GroupElement{{0.0, std::sqrt(2.0)}, {1.0, 0.0}}) ==
        OperatorClass::Unitary);
  CHECK(classify(GroupElement{{2.0, 0.0}, {1.0, 0.0}}) ==
        OperatorClass::HilbertSchmidt);
  CHECK(classify(GroupElement{{1.0, 0.0}, {0.5, 0.0}}) ==
        OperatorClass::Unbounded);
  // Negative |s|^2 - |t|^2 is still on the unbounded side of the trichotomy.
  CHECK(classify(GroupElement{{1.0, 0.0}, {1.5, 0.0}}) ==
        OperatorClass::Unbounded);

  CHECK_THROWS_AS(classify(GroupElement{{1.0, 0.0}, {2.0, 0.0}}),
                  fockcanon::DomainViolation);
  CHECK_THROWS_AS(classify(GroupElement{{1.0, 0.0}, {2.1, 0.0}}),
                  fockcanon::DomainViolation);
}

TEST_CASE("squared Hilbert-Schmidt norm: closed values and quadrature") {
  CHECK(hs_norm_sq(GroupElement{{2.0, 0.0}, {0.0, 0.0}}) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(hs_norm_sq(GroupElement{{3.0, 0.0}, {0.0, 2.0}}) ==
        doctest::Approx(3.0 / 4.0).epsilon(1e-14));
  CHECK(hs_norm_sq(GroupElement{{std::sqrt(2.0), 0.0}, {0.0, 0.0}}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(hs_norm_sq(GroupElement{{1.0, 0.0}, {0.5, 0.0}}),
                  fockcanon::NotHilbertSchmidt);
  CHECK_THROWS_AS(hs_norm_sq(GroupElement{{1.0, 0.0}, {0.0, 0.0}}),
                  fockcanon::NotHilbertSchmidt);

  const QuadratureRule rule = QuadratureRule::gauss_hermite(96);
  for (const GroupElement g :
       {GroupElement{{2.0, 0.0}, {0.0, 0.0}}, GroupElement{{2.0, 0.0}, {1.0, 0.0}},
        GroupElement{{3.0, 0.0}, {0.0, 2.0}}}) {
    const double closed = hs_norm_sq(g);
    const double quad = hs_norm_sq_quadrature(g, rule);
    CHECK(std::abs(quad - closed) <= 1e-5 * closed);
  }
}

TEST_CASE("pointwise application: reproducing and closed-form targets") {
  const QuadratureRule rule = QuadratureRule::gauss_hermite(96);
  const GroupElement id{{1.0, 0.0}, {0.0, 0.0}};
  const cplx z{0.7, 0.2};

  auto poly = [](cplx w) { return w * w * w - 2.0 * w + cplx{0.0, 1.0}; };
  CHECK(dist(apply(id, poly, z, rule), poly(z)) < 1e-12);

  // Constant input: T 1 = s^{-1/2} e^{t z^2/(2s)}.
  const GroupElement g{{2.0, 0.0}, {1.0, 0.0}};
  auto one = [](cplx) { return cplx{1.0, 0.0}; };
  const cplx want = std::exp(g.t * z * z / (2.0 * g.s)) / principal_sqrt(g.s);
  CHECK(dist(apply(g, one, z, rule), want) <= 1e-10 * std::abs(want));

  // Coherent state input: T K_u = K_u^{(s,t)}, the kernel itself at (z, u).
  const cplx u{0.4, -0.6};
  auto coherent = [u](cplx w) { return std::exp(w * std::conj(u)); };
  CHECK(dist(apply(g, coherent, z, rule), kernel_eval(g, z, u)) <=
        1e-10 * std::abs(kernel_eval(g, z, u)));

  // Coefficient-vector overload matches the callable path.
  fockcanon::TruncatedFockVector f;
  f.coeffs = {cplx{1.0, 0.0}, cplx{0.0, -0.5}, cplx{0.3, 0.0}, cplx{0.0, 0.2}};
  CHECK(dist(apply(g, f, z, rule), apply(g, f.as_callable(), z, rule)) <
        1e-13);

  // Unbounded parameters demand the explicit opt-in.
  const GroupElement ub{{1.0, 0.0}, {0.5, 0.0}};
  CHECK_THROWS_AS(apply(ub, one, z, rule), fockcanon::DomainViolation);
  CHECK_NOTHROW(apply(ub, one, z, rule, true));
}

TEST_CASE("basis image closed form against the quadrature oracle") {
  const GroupElement g{{2.0, 0.0}, {1.0, 0.0}};
  const QuadratureRule rule = scaled_rule(g, 64);

  // 20-point validation of the derived formula before anything relies on it.
  for (unsigned n = 0; n <= 6; ++n) {
    const auto closed = apply_to_basis(g, n);
    for (int j = 0; j < 20; ++j) {
      const cplx z = 1.5 * (j + 1) / 20.0 * std::exp(cplx{0.0, 2.4 * j});
      const cplx via_quad = apply(
          g, [n](cplx w) { return basis_e(n, w); }, z, rule);
      CHECK(dist(closed(z), via_quad) <= 1e-7 * (1.0 + std::abs(via_quad)));
    }
  }

  // Rotation case is diagonal: T e_n = e^{-i alpha (n + 1/2)} e_n.
  const double alpha = 1.1;
  const GroupElement rot{std::exp(cplx{0.0, alpha}), {0.0, 0.0}};
  for (unsigned n = 0; n <= 8; ++n) {
    const auto image = apply_to_basis(rot, n);
    const cplx z{0.5, -0.9};
    const cplx want = std::exp(cplx{0.0, -alpha * (n + 0.5)}) * basis_e(n, z);
    CHECK(dist(image(z), want) <= 1e-12 * (1.0 + std::abs(want)));
  }

  // n = 0 reduces to the constant-input closed form.
  const auto img0 = apply_to_basis(g, 0);
  const cplx z0{0.5, 0.0};
  CHECK(dist(img0(z0), std::exp(g.t * z0 * z0 / (2.0 * g.s)) /
                           principal_sqrt(g.s)) < 1e-13);

  CHECK_THROWS_AS(apply_to_basis(GroupElement{{1.0, 0.0}, {1.0, 0.0}}, 2),
                  fockcanon::NotInFock);
}

TEST_CASE("matrix representation: reference forms and guards") {
  const Eigen::MatrixXcd I = matrix(GroupElement{{1.0, 0.0}, {0.0, 0.0}}, 12);
  CHECK((I - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() <
        1e-13);

  const double alpha = kPi / 3.0;
  const GroupElement rot{std::exp(cplx{0.0, alpha}), {0.0, 0.0}};
  const Eigen::MatrixXcd R = matrix(rot, 10);
  for (int m = 0; m < 10; ++m) {
    for (int n = 0; n < 10; ++n) {
      const cplx want = (m == n)
                            ? std::exp(cplx{0.0, -alpha * (n + 0.5)})
                            : cplx{0.0, 0.0};
      CHECK(dist(R(m, n), want) < 1e-13);
    }
  }

  CHECK_THROWS_AS(matrix(GroupElement{{1.0, 0.0}, {1.0, 0.0}}, 8),
                  fockcanon::NotInFock);
  CHECK_THROWS_AS(matrix(GroupElement{{2.0, 0.0}, {1.0, 0.0}}, 0),
                  fockcanon::TruncationTooLarge);
  CHECK_THROWS_AS(matrix(GroupElement{{2.0, 0.0}, {1.0, 0.0}},
                         fockcanon::kMaxTruncation + 1),
                  fockcanon::TruncationTooLarge);
}

TEST_CASE("matrix representation: recurrence entries match quadrature") {
  const QuadratureRule rule = QuadratureRule::gauss_hermite(48);
  for (const GroupElement g : {GroupElement{{2.0, 0.0}, {1.0, 0.0}},
                               GroupElement{{0.0, std::sqrt(2.0)}, {1.0, 0.0}}}) {
    const Eigen::MatrixXcd A = matrix(g, 48, MatrixMethod::ClosedForm, rule);
    const Eigen::MatrixXcd B = matrix(g, 48, MatrixMethod::Quadrature, rule);
    const double defect =
        (A - B).topLeftCorner(16, 16).cwiseAbs().maxCoeff();
    CHECK(defect <= 1e-6);
  }
}

TEST_CASE("unitary parameters give unitary truncated matrices") {
  std::mt19937 gen(314);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const GroupElement g = random_sl(gen, 0.4);
    const Eigen::MatrixXcd M = matrix(g, 64);
    const auto C = M.leftCols(16);
    const Eigen::MatrixXcd P = C.adjoint() * C;
    worst = std::max(worst,
                     (P - Eigen::MatrixXcd::Identity(16, 16))
                         .cwiseAbs()
                         .maxCoeff());
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("unitarity persists across the full parameter range") {
  // Column n of the matrix centres its mass near row (1 + 2|t|^2) n, so the
  // truncation order has to grow with |t| for the Gram product to converge.
  struct Case {
    double tmod;
    int N;
  };
  for (const Case c : {Case{0.9, 128}, Case{1.3, 192}, Case{1.7, 256},
                       Case{2.0, 256}}) {
    const cplx t = c.tmod * std::exp(cplx{0.0, 0.7});
    const cplx s = std::sqrt(1.0 + c.tmod * c.tmod) *
                   std::exp(cplx{0.0, -0.4});
    const Eigen::MatrixXcd M = matrix(GroupElement{s, t}, c.N);
    const auto C = M.leftCols(5);
    const Eigen::MatrixXcd P = C.adjoint() * C;
    const double defect =
        (P - Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff();
    CHECK(defect <= 1e-6);
  }
}

TEST_CASE("Hilbert-Schmidt mass accumulates monotonically") {
  const GroupElement g{{2.0, 0.0}, {1.0, 0.0}};
  const double target = hs_norm_sq(g);
  CHECK(target == doctest::Approx(1.0).epsilon(1e-14));

  double prev = 0.0;
  for (const int N : {20, 40, 60}) {
    const double partial = matrix(g, N).squaredNorm();
    CHECK(partial > prev);
    CHECK(partial < target + 1e-12);
    prev = partial;
  }
  CHECK(std::abs(prev - target) <= 1e-3 * target);

  const GroupElement g2{{2.0, 0.0}, {0.0, 0.0}};
  CHECK(std::abs(matrix(g2, 60).squaredNorm() - 2.0 / 3.0) <= 1e-3);
}

TEST_CASE("adjoint parameters and the conjugate-transpose identity") {
  const GroupElement g{{0.0, std::sqrt(2.0)}, {1.0, 0.0}};
  const auto [gadj, c] = adjoint_params(g);
  CHECK(dist(gadj.s, {0.0, -std::sqrt(2.0)}) < 1e-15);
  CHECK(dist(gadj.t, {-1.0, 0.0}) == 0.0);
  CHECK(c.value == +1);

  const auto [nadj, nc] = adjoint_params(GroupElement{{-1.0, 0.0}, {0.0, 0.0}});
  CHECK(dist(nadj.s, {-1.0, 0.0}) == 0.0);
  CHECK(nc.value == -1);

  // Entrywise identity: matrix(T^*) equals c times the conjugate transpose.
  for (const GroupElement e :
       {g, GroupElement{{-1.0, 0.0}, {0.0, 0.0}},
        GroupElement{std::sqrt(1.25) * std::exp(cplx{0.0, 2.3}),
                     cplx{0.5, 0.0}}}) {
    const auto [ea, ec] = adjoint_params(e);
    const Eigen::MatrixXcd lhs = matrix(ea, 32);
    const Eigen::MatrixXcd rhs = ec.as_double() * matrix(e, 32).adjoint();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }

  CHECK_THROWS_AS(adjoint_params(GroupElement{{2.0, 0.0}, {0.0, 0.0}}),
                  fockcanon::NotUnitary);
}

TEST_CASE("operator composition carries the projective sign") {
  const GroupElement quarter{{0.0, 1.0}, {0.0, 0.0}};
  const auto [half, sq] = compose_operators(quarter, quarter);
  CHECK(dist(half.s, {-1.0, 0.0}) < 1e-16);
  CHECK(sq.value == +1);

  const GroupElement threeq{std::exp(cplx{0.0, 3.0 * kPi / 4.0}), {0.0, 0.0}};
  const auto [wrapped, sw] = compose_operators(threeq, threeq);
  CHECK(dist(wrapped.s, std::exp(cplx{0.0, -kPi / 2.0})) < 1e-15);
  CHECK(sw.value == -1);

  // Matrix realization: M(g1) M(g2) = sign * M(g1 g2) on the interior block.
  std::mt19937 gen(2718);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const GroupElement g1 = random_sl(gen, 0.5);
    const GroupElement g2 = random_sl(gen, 0.5);
    const auto [g12, sign] = compose_operators(g1, g2);
    const Eigen::MatrixXcd P = matrix(g1, 64) * matrix(g2, 64) -
                               sign.as_double() * matrix(g12, 64);
    worst = std::max(worst, P.topLeftCorner(12, 12).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-5);

  // Unit-sign wrap example at the matrix level; rotations are diagonal, so
  // the full truncated product is exact.
  const Eigen::MatrixXcd W = matrix(threeq, 16) * matrix(threeq, 16) +
                             matrix(wrapped, 16);
  CHECK(W.cwiseAbs().maxCoeff() < 1e-13);

  CHECK_THROWS_AS(
      compose_operators(GroupElement{{2.0, 0.0}, {1.0, 0.0}}, quarter),
      fockcanon::NotUnitary);
}

TEST_CASE("unbounded side: coherent-state norms outgrow every bound") {
  const GroupElement g{{1.0, 0.0}, {0.5, 0.0}};

  // Pick the ray that maximizes the quadratic exponent of the norm.
  double best = -1.0;
  double best_angle = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double th = 2.0 * kPi * j / 64.0;
    const cplx u = 2.0 * std::exp(cplx{0.0, th});
    const double ratio = kernel_norm(g, u) / std::exp(std::norm(u) / 2.0);
    if (ratio > best) {
      best = ratio;
      best_angle = th;
    }
  }

  double prev = 0.0;
  double last = 0.0;
  for (const double k : {1.0, 2.0, 4.0, 8.0}) {
    const cplx u = k * std::exp(cplx{0.0, best_angle});
    last = kernel_norm(g, u) / std::exp(std::norm(u) / 2.0);
    CHECK(last > prev);
    prev = last;
  }
  CHECK(last > 1e3);
}
