#include <doctest.h>

#include "kslift/lift_verifier.hpp"
#include "kslift/quadrature.hpp"
#include "support/oracles.hpp"

using namespace kslift;

namespace {

constexpr double kPiSq = 9.869604401089358;

ScalarField gaussian_y(double a) {
  // exp(-a |y|^2) on R^4.
  return ScalarField::exp(ScalarField::scale(
      -a, ScalarField::poly(ExactPolynomial::norm_squared(4))));
}

std::vector<Eigen::Vector4d> annulus_points(int count, double rmin,
                                            double rmax, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::Vector4d> points;
  points.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    points.emplace_back(rng.annulus(4, rmin, rmax));
  return points;
}

}  // namespace

TEST_CASE("lifted hydrogen equation has zero residual") {
  // phi_K = exp(-(Z/2)|y|^2) solves the lifted equation with W1 = -Z,
  // W2 = Z^2/4 and F = 0: Delta exp(-a rho^2) = (4a^2 rho^2 - 8a) e in R^4.
  double z = 2.0;
  ScalarField phiK = gaussian_y(z / 2);
  ScalarField w1 = ScalarField::constant(3, -z);
  ScalarField w2 = ScalarField::constant(3, z * z / 4);
  ScalarField zero = ScalarField::constant(3, 0.0);
  ResidualReport report =
      residual_one_particle(phiK, w1, w2, zero, zero,
                            annulus_points(100, 0.1, 1.0, 1), 1e-9);
  CHECK(report.pass);
  CHECK(report.max_residual <= 1e-9);
  CHECK(report.points == 100);
}

TEST_CASE("trivial residual") {
  ScalarField one = ScalarField::constant(4, 1.0);
  ScalarField zero = ScalarField::constant(3, 0.0);
  double residual = residual_one_particle_at(
      one, zero, zero, zero, zero, Eigen::Vector4d(0.3, 0.1, -0.4, 0.2));
  CHECK(residual == 0);
}

TEST_CASE("residual rejects y = 0") {
  ScalarField one = ScalarField::constant(4, 1.0);
  ScalarField zero = ScalarField::constant(3, 0.0);
  CHECK_THROWS_AS(residual_one_particle_at(one, zero, zero, zero, zero,
                                           Eigen::Vector4d::Zero()),
                  Error);
}

TEST_CASE("manufactured solution") {
  // phi = exp(-|x|^2), Delta phi = (4|x|^2 - 6) phi; choose W1 = x1,
  // W2 = 1 + |x|^2 and manufacture F1 = W1 phi, F2 = W2 phi - Delta phi.
  ExactPolynomial norm3 = ExactPolynomial::norm_squared(3);
  ScalarField phi = ScalarField::exp(
      ScalarField::scale(-1.0, ScalarField::poly(norm3)));
  // phi o K = exp(-|y|^4).
  ScalarField phiK = ScalarField::exp(ScalarField::scale(
      -1.0, ScalarField::poly(pow(ExactPolynomial::norm_squared(4), 2))));

  ExactPolynomial w2_poly = norm3;
  w2_poly.add_term(MultiIndex({0, 0, 0}), Rational(1));
  ScalarField w1 = ScalarField::poly(ExactPolynomial::variable(3, 0));
  ScalarField w2 = ScalarField::poly(w2_poly);

  ExactPolynomial lap_factor = norm3 * Rational(4);  // 4|x|^2 - 6
  lap_factor.add_term(MultiIndex({0, 0, 0}), Rational(-6));
  ScalarField f1 = w1 * phi;
  ScalarField f2 =
      (w2 + ScalarField::scale(-1.0, ScalarField::poly(lap_factor))) * phi;

  ResidualReport report =
      residual_one_particle(phiK, w1, w2, f1, f2,
                            annulus_points(60, 0.2, 1.0, 2), 1e-8);
  CHECK(report.pass);
}

TEST_CASE("one-particle lifted equation as an exact polynomial identity") {
  // For polynomial data the W/F terms cancel exactly and what remains is
  // the Laplacian lift identity.
  Rng rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    ExactPolynomial phi = testing::random_polynomial(rng, 3, 4);
    ExactPolynomial w1 = testing::random_polynomial(rng, 3, 2);
    ExactPolynomial w2 = testing::random_polynomial(rng, 3, 2);
    ExactPolynomial f1 = w1 * phi;
    ExactPolynomial f2 = w2 * phi - laplacian(phi);

    ExactPolynomial norm4 = ExactPolynomial::norm_squared(4);
    ExactPolynomial lhs =
        -laplacian(pullback_polynomial(phi)) +
        Rational(4) * ((pullback_polynomial(w1) +
                        norm4 * pullback_polynomial(w2)) *
                       pullback_polynomial(phi));
    ExactPolynomial rhs =
        Rational(4) * (pullback_polynomial(f1) +
                       norm4 * pullback_polynomial(f2));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("grusin operator on constants") {
  LiftProblem p;
  p.Z = 1.5;
  p.N = 2;
  p.W = ScalarField::constant(6, 0.0);
  p.region_y = 2.0;
  p.region_xprime = 2.0;
  p.xprime_center = Eigen::VectorXd::Zero(3);
  ScalarField u = ScalarField::constant(7, 1.0);
  Eigen::VectorXd w(7);
  w << 0.3, 0.2, -0.1, 0.4, 0.5, -0.2, 0.1;
  CHECK(grusin_apply(u, p, w) == doctest::Approx(-4.0 * p.Z));
}

TEST_CASE("grusin operator annihilates the lifted hydrogen state") {
  double z = 2.0;
  LiftProblem p;
  p.Z = z;
  p.E = -z * z / 4;
  p.N = 1;
  p.W = ScalarField::constant(3, z * z / 4);  // -E
  p.region_y = 2.0;
  p.xprime_center = Eigen::VectorXd(0);
  ScalarField u = gaussian_y(z / 2);
  Rng rng(101);
  for (int i = 0; i < 40; ++i) {
    Eigen::VectorXd w = rng.annulus(4, 0.1, 1.0);
    CHECK(std::abs(grusin_apply(u, p, w)) <= 1e-9);
  }
}

TEST_CASE("grusin operator matches the exact polynomial expansion") {
  Rng rng(103);
  ExactPolynomial u_poly = testing::random_polynomial(rng, 7, 4);
  // W is specified downstairs on (x, x'); taking it independent of x makes
  // the upstairs composition W(K(y), x') an exact polynomial in (y, x').
  ExactPolynomial w_tail = testing::random_polynomial(rng, 3, 2);
  ExactPolynomial w_down(6), w_up(7);
  for (const auto& [exp, coeff] : w_tail.terms()) {
    std::vector<int> down{0, 0, 0};
    down.insert(down.end(), exp.exponents().begin(), exp.exponents().end());
    w_down.add_term(MultiIndex(std::move(down)), coeff);
    std::vector<int> up{0, 0, 0, 0};
    up.insert(up.end(), exp.exponents().begin(), exp.exponents().end());
    w_up.add_term(MultiIndex(std::move(up)), coeff);
  }
  // Oracle: apply Q symbolically with exact coefficients (Z = 3/2).
  ExactPolynomial expected = testing::exact_grusin_apply(u_poly, w_up, 3, 2);

  LiftProblem p;
  p.Z = 1.5;
  p.N = 2;
  p.W = ScalarField::poly(w_down);
  p.region_y = 2.0;
  p.region_xprime = 3.0;
  p.xprime_center = Eigen::VectorXd::Zero(3);
  ScalarField u = ScalarField::poly(u_poly);

  for (int i = 0; i < 25; ++i) {
    Eigen::VectorXd w(7);
    Rng point_rng(200 + static_cast<std::uint64_t>(i));
    w.head<4>() = point_rng.annulus(4, 0.1, 1.0);
    w.tail<3>() = point_rng.annulus(3, 0.0, 1.0);
    double direct = grusin_apply(u, p, w);
    double symbolic = expected.evaluate<double>(testing::to_std(w));
    CHECK(std::abs(direct - symbolic) <=
          1e-9 * (1 + std::abs(symbolic)));
  }
}

TEST_CASE("grusin rejects out-of-region points") {
  LiftProblem p;
  p.Z = 1;
  p.N = 1;
  p.W = ScalarField::constant(3, 0.0);
  p.region_y = 0.5;
  p.xprime_center = Eigen::VectorXd(0);
  ScalarField u = ScalarField::constant(4, 1.0);
  Eigen::VectorXd far(4);
  far << 1, 0, 0, 0;
  CHECK_THROWS_AS(grusin_apply(u, p, far), Error);
}

TEST_CASE("lift identity for constants") {
  // psi = 1, W = 0, E = 0: both sides equal -4Z by |K(y)| = |y|^2.
  LiftProblem p;
  p.Z = 1.75;
  p.N = 2;
  p.W = ScalarField::constant(6, 0.0);
  p.region_y = 2.0;
  p.region_xprime = 2.0;
  p.xprime_center = Eigen::VectorXd::Zero(3);
  ScalarField psi = ScalarField::constant(6, 1.0);
  Eigen::VectorXd w(7);
  w << 0.4, -0.2, 0.3, 0.1, 0.2, 0.0, -0.3;
  auto [lhs, rhs] = lift_identity_check(psi, p, w);
  CHECK(lhs == doctest::Approx(-4.0 * p.Z));
  CHECK(rhs == doctest::Approx(-4.0 * p.Z));
}

TEST_CASE("lift identity for hydrogen x Gaussian, N = 2") {
  // psi = exp(-|x|) exp(-|x'|^2) with the atomic V_E; the identity holds
  // for arbitrary smooth psi.
  LiftProblem p;
  p.Z = 1.0;
  p.E = -0.25;
  p.N = 2;
  p.W = atomic_potential(p.Z, p.E, p.N);
  p.region_y = 1.1;
  p.region_xprime = 0.6;
  p.xprime_center = Eigen::VectorXd::Zero(3);
  p.xprime_center << 2.0, 0.0, 0.0;

  ScalarField psi =
      ScalarField::exp(ScalarField::scale(-1.0, ScalarField::norm(6, 0, 3))) *
      ScalarField::exp(ScalarField::scale(
          -1.0, ScalarField::poly([] {
            ExactPolynomial q(6);
            for (int i = 3; i < 6; ++i)
              q.add_term(MultiIndex::unit(6, i) + MultiIndex::unit(6, i),
                         Rational(1));
            return q;
          }())));

  Rng rng(107);
  double max_analytic = 0, max_fd = 0;
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd w(7);
    w.head<4>() = rng.annulus(4, 0.1, 1.0);
    w.tail<3>() = p.xprime_center + rng.annulus(3, 0.0, 0.5);
    auto [lhs, rhs] = lift_identity_check(psi, p, w);
    max_analytic = std::max(max_analytic, std::abs(lhs - rhs));
    auto [lhs_fd, rhs_fd] =
        lift_identity_check(psi, p, w, DerivativeMode::finite_difference);
    max_fd = std::max(max_fd, std::abs(lhs_fd - rhs_fd));
  }
  CHECK(max_analytic <= 1e-8);
  CHECK(max_fd <= 1e-4);
}

TEST_CASE("lift identity rejects y = 0") {
  LiftProblem p;
  p.Z = 1;
  p.N = 1;
  p.W = ScalarField::constant(3, 0.0);
  p.region_y = 1.0;
  p.xprime_center = Eigen::VectorXd(0);
  ScalarField psi = ScalarField::constant(3, 1.0);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(4);
  CHECK_THROWS_AS(lift_identity_check(psi, p, w), Error);
}

TEST_CASE("atomic potential values") {
  ScalarField v = atomic_potential(2.0, -0.5, 2);
  Eigen::VectorXd z(6);
  z << 1, 0, 0, 0, 2, 0;
  // -Z/|x_2| + 1/|x_1 - x_2| - E
  double expected = -2.0 / 2.0 + 1.0 / std::sqrt(1 + 4) + 0.5;
  CHECK(v.value(z) == doctest::Approx(expected));
}

TEST_CASE("isometry: phi = 1 on the unit ball") {
  IsometryReport r =
      isometry_check(ScalarField::constant(3, 1.0), 1.0, 1e-6);
  CHECK(r.pass);
  CHECK(r.lhs == doctest::Approx(kPiSq / 2).epsilon(1e-6));
  CHECK(r.rhs == doctest::Approx(kPiSq / 2).epsilon(1e-6));
}

TEST_CASE("isometry: phi = |x|^{1/2} cancels the weight") {
  IsometryReport r = isometry_check(
      ScalarField::pow(ScalarField::norm(3), 0.5), 1.0, 1e-6);
  CHECK(r.pass);
  CHECK(r.rhs == doctest::Approx(kPiSq / 3).epsilon(1e-6));
}

TEST_CASE("isometry: exponential on a larger ball") {
  ScalarField phi =
      ScalarField::exp(ScalarField::scale(-1.0, ScalarField::norm(3)));
  IsometryReport r = isometry_check(phi, 2.0, 1e-6);
  CHECK(r.pass);
  CHECK(r.lhs / r.rhs == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("weighted isometry variant") {
  // || |y| phi_K ||^2 = (pi/4) ||phi||^2; for phi = 1, r = 1 both sides
  // are pi^2/3.
  IsometryReport r =
      isometry_check(ScalarField::constant(3, 1.0), 1.0, 1e-6, true);
  CHECK(r.pass);
  CHECK(r.lhs == doctest::Approx(kPiSq / 3).epsilon(1e-6));
  CHECK(r.rhs == doctest::Approx(kPiSq / 3).epsilon(1e-6));
}

TEST_CASE("quadrature ratio converges monotonically to pi/4") {
  ScalarField phi =
      ScalarField::exp(ScalarField::scale(-1.0, ScalarField::norm(3)));
  auto ratio_error = [&](int n) {
    double up = integrate_ball4(
        [&](const Eigen::Vector4d& y) {
          double v = phi.value(ks_map(y));
          return v * v;
        },
        std::sqrt(2.0), 0, n);
    double down = integrate_ball3(
        [&](const Eigen::Vector3d& x) {
          double v = phi.value(x);
          return v * v;
        },
        2.0, -1, n);
    return std::abs(up / down - M_PI / 4);
  };
  double e1 = ratio_error(4);
  double e2 = ratio_error(8);
  double e3 = ratio_error(16);
  CHECK(e2 < e1);
  CHECK(e3 < e2);
  CHECK(e3 <= 1e-8);
}

TEST_CASE("quadrature budget exhaustion is reported") {
  ScalarField phi =
      ScalarField::exp(ScalarField::scale(-1.0, ScalarField::norm(3)));
  try {
    isometry_check(phi, 2.0, 1e-12, false, 2000);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::quadrature_budget);
  }
}

TEST_CASE("default tolerances") {
  CHECK(default_tolerance(DerivativeMode::analytic) == 1e-9);
  CHECK(default_tolerance(DerivativeMode::finite_difference) == 1e-4);
}
