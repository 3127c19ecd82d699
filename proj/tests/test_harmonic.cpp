#include <doctest.h>

#include "kslift/harmonic.hpp"
#include "kslift/ks_transform.hpp"
#include "support/oracles.hpp"

using namespace kslift;
using testing::random_harmonic;
using testing::random_homogeneous;

namespace {

ExactPolynomial mono4(int a, int b, int c, int d, Rational coeff) {
  return ExactPolynomial::monomial(MultiIndex({a, b, c, d}), coeff);
}

}  // namespace

TEST_CASE("canonical decomposition of y1^2") {
  HomogeneousPolynomial q(mono4(2, 0, 0, 0, Rational(1)), 2);
  CanonicalDecomposition d = canonical_decompose(q);
  REQUIRE(d.layers.size() == 2);
  CHECK(d.layers[0].first == 0);
  // H_2 = y1^2 - |y|^2 / 4; check Delta H_2 = 2 - 2 = 0 and the exact form.
  ExactPolynomial h2 = mono4(2, 0, 0, 0, Rational(1)) -
                       ExactPolynomial::norm_squared(4) * Rational(1, 4);
  CHECK(laplacian(h2).is_zero());
  CHECK(d.layers[0].second.base() == h2);
  CHECK(d.layers[1].first == 1);
  CHECK(d.layers[1].second.base() ==
        ExactPolynomial::constant(4, Rational(1, 4)));
}

TEST_CASE("harmonic input is its own decomposition") {
  // y1^3 - 3 y1 y2^2 is harmonic of degree 3.
  ExactPolynomial h = mono4(3, 0, 0, 0, Rational(1)) +
                      mono4(1, 2, 0, 0, Rational(-3));
  REQUIRE(laplacian(h).is_zero());
  CanonicalDecomposition d = canonical_decompose(HomogeneousPolynomial(h, 3));
  REQUIRE(d.layers.size() == 1);
  CHECK(d.layers[0].first == 0);
  CHECK(d.layers[0].second.base() == h);
}

TEST_CASE("|y|^2 decomposes into the single constant layer") {
  CanonicalDecomposition d = canonical_decompose(
      HomogeneousPolynomial(ExactPolynomial::norm_squared(4), 2));
  REQUIRE(d.layers.size() == 1);
  CHECK(d.layers[0].first == 1);
  CHECK(d.layers[0].second.base() ==
        ExactPolynomial::constant(4, Rational(1)));
}

TEST_CASE("decomposition re-sums exactly with harmonic layers") {
  Rng rng(43);
  for (int dim : {3, 4}) {
    for (int degree = 0; degree <= 12; degree += 3) {
      HomogeneousPolynomial q = random_homogeneous(rng, dim, degree);
      CanonicalDecomposition d = canonical_decompose(q);
      CHECK(d.recombine() == q.base());
      for (const auto& [j, h] : d.layers) {
        CHECK(is_harmonic(h.base()));
        CHECK(h.degree() == degree - 2 * j);
      }
    }
  }
}

TEST_CASE("non-homogeneous input is rejected") {
  ExactPolynomial p(4);
  p.add_term(MultiIndex({2, 0, 0, 0}), Rational(1));
  p.add_term(MultiIndex({1, 0, 0, 0}), Rational(1));
  CHECK_THROWS_AS(HomogeneousPolynomial(p, 2), Error);
}

TEST_CASE("is_harmonic") {
  CHECK(is_harmonic(mono4(1, 1, 0, 0, Rational(1))));
  CHECK(!is_harmonic(ExactPolynomial::norm_squared(4)));

  Rng rng(47);
  for (int degree = 1; degree <= 4; ++degree) {
    HomogeneousPolynomial y = random_harmonic(rng, 3, degree);
    REQUIRE(is_harmonic(y.base()));
    CHECK(is_harmonic(pullback_polynomial(y.base())));
  }
}

TEST_CASE("hopf descent of the second KS component") {
  ExactPolynomial p = mono4(1, 1, 0, 0, Rational(2)) +
                      mono4(0, 0, 1, 1, Rational(-2));
  HomogeneousPolynomial y = hopf_descend(HomogeneousPolynomial(p, 2));
  CHECK(y.base() == ExactPolynomial::variable(3, 1));
  CHECK(y.degree() == 1);
}

TEST_CASE("hopf descent of constants") {
  HomogeneousPolynomial y = hopf_descend(
      HomogeneousPolynomial(ExactPolynomial::constant(4, Rational(7, 3)), 0));
  CHECK(y.base() == ExactPolynomial::constant(3, Rational(7, 3)));
}

TEST_CASE("descent round trips") {
  Rng rng(53);
  for (int degree = 0; degree <= 6; ++degree) {
    for (int trial = 0; trial < 3; ++trial) {
      HomogeneousPolynomial y = random_harmonic(rng, 3, degree);
      HomogeneousPolynomial p =
          HomogeneousPolynomial(pullback_polynomial(y.base()), 2 * degree);
      HomogeneousPolynomial recovered = hopf_descend(p);
      CHECK(recovered.base() == y.base());
      CHECK(recovered.degree() == degree);
      // The other direction.
      CHECK(pullback_polynomial(recovered.base()) == p.base());
    }
  }
}

TEST_CASE("descent preconditions are reported distinctly") {
  // Odd degree.
  CHECK_THROWS_WITH_AS(
      hopf_descend(HomogeneousPolynomial(mono4(1, 0, 0, 0, Rational(1)), 1)),
      doctest::Contains("even-degree"), Error);
  // Not harmonic.
  try {
    hopf_descend(
        HomogeneousPolynomial(ExactPolynomial::norm_squared(4), 2));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_harmonic);
  }
  // Harmonic but not L-annihilated.
  try {
    hopf_descend(HomogeneousPolynomial(mono4(1, 1, 0, 0, Rational(1)), 2));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_l_annihilated);
  }
}

TEST_CASE("harmonic sup bound") {
  CHECK(harmonic_sup_bound(0) ==
        doctest::Approx(1.0 / std::sqrt(2 * M_PI * M_PI)));
  CHECK(harmonic_sup_bound(2) ==
        doctest::Approx(3.0 / std::sqrt(2 * M_PI * M_PI)));
  for (int d = 0; d < 10; ++d)
    CHECK(harmonic_sup_bound(d + 1) > harmonic_sup_bound(d));
  // The constant (2 pi^2)^{-1/2} is L^2-normalized on S^3 and attains the
  // d = 0 bound.
  CHECK(harmonic_sup_bound(0) * std::sqrt(2 * M_PI * M_PI) ==
        doctest::Approx(1.0));
}
