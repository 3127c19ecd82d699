#include <doctest.h>

#include "kslift/splitter.hpp"
#include "kslift/ks_transform.hpp"
#include "support/oracles.hpp"

using namespace kslift;
using testing::random_polynomial;

namespace {

TruncatedSeries series_from(const ExactPolynomial& p, int max_degree,
                            bool even = true) {
  TruncatedSeries s(p.dim(), max_degree);
  s.set_even(even);
  for (const auto& [exp, coeff] : p.terms()) s.add_term(exp, coeff);
  return s;
}

// A random pair (phi1, phi2) of polynomial series on R^3 with the degree
// layout the splitter produces: deg phi1 <= m, deg phi2 <= m - 1.
SplitPair random_pair(Rng& rng, int m) {
  SplitPair p{TruncatedSeries(3, m), TruncatedSeries(3, m - 1), 1.0,
              std::nullopt};
  ExactPolynomial a = random_polynomial(rng, 3, m);
  ExactPolynomial b = random_polynomial(rng, 3, m - 1);
  for (const auto& [exp, coeff] : a.terms()) p.phi1.add_term(exp, coeff);
  for (const auto& [exp, coeff] : b.terms()) p.phi2.add_term(exp, coeff);
  return p;
}

}  // namespace

TEST_CASE("split of a plain pullback is (phi, 0)") {
  ExactPolynomial f = ExactPolynomial::variable(3, 0);
  TruncatedSeries s = series_from(pullback_polynomial(f), 2);
  SplitPair p = split_even_series(s);
  CHECK(p.phi1.terms() == f);
  CHECK(p.phi2.is_zero());
}

TEST_CASE("split of |y|^2 is (0, 1)") {
  TruncatedSeries s = series_from(ExactPolynomial::norm_squared(4), 2);
  SplitPair p = split_even_series(s);
  CHECK(p.phi1.is_zero());
  CHECK(p.phi2.terms() == ExactPolynomial::constant(3, Rational(1)));
}

TEST_CASE("hydrogen split: cosh and -sinh/r truncations") {
  // Degree-10 data determines phi1 through |x|^5 and phi2 through |x|^4;
  // the expected parts are the even/odd halves of exp(-|x|).
  SplitPair p = split_even_series(testing::gaussian_pullback_series(10));
  CHECK(p.phi1.max_degree() == 5);
  CHECK(p.phi2.max_degree() == 4);
  CHECK(p.phi1.terms() == testing::cosh_truncation(4));
  CHECK(p.phi2.terms() == testing::minus_sinhc_truncation(4));
  CHECK(p.radius == 0.125);  // M = 1

  // The degree-8 truncation lacks the |y|^10 layer, so phi2 stops at |x|^2.
  SplitPair q = split_even_series(testing::gaussian_pullback_series(8));
  CHECK(q.phi1.terms() == testing::cosh_truncation(4));
  CHECK(q.phi2.terms() == testing::minus_sinhc_truncation(2));
}

TEST_CASE("split rejects odd-order terms") {
  TruncatedSeries s(4, 3);
  s.add_term(MultiIndex({1, 0, 0, 0}), Rational(1));
  try {
    split_even_series(s);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::evenness_violation);
  }
}

TEST_CASE("split rejects non-pullback layers") {
  // L(y1^2) = -2 y1 y4 != 0, so y1^2 is even but not a pullback layer.
  TruncatedSeries s(4, 2);
  s.add_term(MultiIndex({2, 0, 0, 0}), Rational(1));
  try {
    split_even_series(s);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_l_annihilated);
  }
}

TEST_CASE("recombine reference pairs") {
  SUBCASE("(x1, 0) gives the first KS component") {
    SplitPair p{TruncatedSeries(3, 1), TruncatedSeries(3, 0), 1.0,
                std::nullopt};
    p.phi1.add_term(MultiIndex({1, 0, 0}), Rational(1));
    CHECK(recombine(p).terms() == ks_components()[0]);
  }
  SUBCASE("(0, 1) gives |y|^2") {
    SplitPair p{TruncatedSeries(3, 1), TruncatedSeries(3, 0), 1.0,
                std::nullopt};
    p.phi2.add_term(MultiIndex({0, 0, 0}), Rational(1));
    CHECK(recombine(p).terms() == ExactPolynomial::norm_squared(4));
    CHECK(recombine(p).even());
  }
}

TEST_CASE("round trip A: split after recombine recovers the pair") {
  Rng rng(61);
  for (int trial = 0; trial < 12; ++trial) {
    SplitPair p = random_pair(rng, 1 + trial % 6);
    TruncatedSeries g = recombine(p);
    SplitPair q = split_even_series(g);
    CHECK(split_uniqueness_check(p, q));
  }
}

TEST_CASE("round trip B: recombine after split recovers the series") {
  Rng rng(67);
  for (int trial = 0; trial < 12; ++trial) {
    // General even L-annihilated data: a recombined random pair.
    TruncatedSeries s = recombine(random_pair(rng, 1 + trial % 6));
    SplitPair p = split_even_series(s);
    TruncatedSeries back = recombine(p);
    CHECK(back.terms() == s.terms());
    CHECK(back.max_degree() == s.max_degree());
  }
}

TEST_CASE("split uniqueness check") {
  Rng rng(71);
  SplitPair p = random_pair(rng, 4);
  CHECK(split_uniqueness_check(p, p));

  SplitPair q = p;
  q.phi2.add_term(MultiIndex({0, 1, 0}), Rational(1, 7));
  CHECK(!split_uniqueness_check(p, q));

  SplitPair r{TruncatedSeries(3, 5), TruncatedSeries(3, 4), 1.0, std::nullopt};
  CHECK_THROWS_AS(split_uniqueness_check(p, r), Error);
}

TEST_CASE("produced layers are homogeneous with the right degrees") {
  Rng rng(73);
  TruncatedSeries s = recombine(random_pair(rng, 5));
  std::vector<SplitLayer> layers;
  split_even_series(s, &layers);
  CHECK(!layers.empty());
  for (const SplitLayer& layer : layers) {
    CHECK(layer.y_layer.degree() == layer.n - layer.j);
    CHECK(is_harmonic(layer.y_layer.base()));
    // |x|^j Y_{n-j} contributes a homogeneous polynomial of degree n to
    // phi1 (j even) or degree n-1 to phi2 (j odd).
    int contributed = layer.j % 2 == 0 ? layer.n : layer.n - 1;
    CHECK(layer.j + layer.y_layer.degree() - (layer.j % 2) == contributed);
  }
}

TEST_CASE("layer sup bound |Y| <= C~ M~^n on the unit sphere") {
  Rng rng(79);
  TruncatedSeries s = testing::gaussian_pullback_series(10);
  RadiusReport bound = growth_to_radius(estimate_growth(s));
  std::vector<SplitLayer> layers;
  split_even_series(s, &layers);
  for (const SplitLayer& layer : layers) {
    for (int i = 0; i < 100; ++i) {
      Eigen::VectorXd x = rng.direction(3);
      double value = std::abs(
          layer.y_layer.base().evaluate<double>(testing::to_std(x)));
      CHECK(value <= bound.C_tilde * std::pow(bound.M_tilde, layer.n) *
                         (1 + 1e-12));
    }
  }
}

TEST_CASE("zero series splits to zero with unbounded radius") {
  TruncatedSeries s(4, 6);
  s.set_even(true);
  SplitPair p = split_even_series(s);
  CHECK(p.phi1.is_zero());
  CHECK(p.phi2.is_zero());
  CHECK(std::isinf(p.radius));
}

TEST_CASE("many-particle split: y-independent input passes through") {
  // u = 1 + (x'_1)^2 / 3, centered at x0' = (1/2, 0, 0).
  TruncatedSeries u(7, 4);
  std::vector<Rational> center(7, Rational(0));
  center[4] = Rational(1, 2);
  u.set_center(center);
  u.set_even(true);
  u.add_term(MultiIndex({0, 0, 0, 0, 0, 0, 0}), Rational(1));
  u.add_term(MultiIndex({0, 0, 0, 0, 2, 0, 0}), Rational(1, 3));
  SplitPair p = split_n_particle(u);
  CHECK(p.phi2.is_zero());
  ExactPolynomial expected(6);
  expected.add_term(MultiIndex({0, 0, 0, 0, 0, 0}), Rational(1));
  expected.add_term(MultiIndex({0, 0, 0, 2, 0, 0}), Rational(1, 3));
  CHECK(p.phi1.terms() == expected);
  CHECK(p.phi1.center()[3] == Rational(1, 2));
  CHECK(p.radius_xprime.has_value());
}

TEST_CASE("many-particle split factorizes per x' slice") {
  // u(y, x') = x'_1 * exp(-|y|^2) truncated at y-degree 10.
  TruncatedSeries g = testing::gaussian_pullback_series(10);
  TruncatedSeries u(7, 11);
  u.set_even(true);
  for (const auto& [exp, coeff] : g.terms().terms()) {
    std::vector<int> e = exp.exponents();
    e.insert(e.end(), {1, 0, 0});
    u.add_term(MultiIndex(std::move(e)), coeff);
  }
  SplitPair p = split_n_particle(u);

  ExactPolynomial cosh_part = testing::cosh_truncation(4);
  ExactPolynomial sinh_part = testing::minus_sinhc_truncation(4);
  ExactPolynomial expected1(6), expected2(6);
  for (const auto& [exp, coeff] : cosh_part.terms()) {
    std::vector<int> e = exp.exponents();
    e.insert(e.end(), {1, 0, 0});
    expected1.add_term(MultiIndex(std::move(e)), coeff);
  }
  for (const auto& [exp, coeff] : sinh_part.terms()) {
    std::vector<int> e = exp.exponents();
    e.insert(e.end(), {1, 0, 0});
    expected2.add_term(MultiIndex(std::move(e)), coeff);
  }
  CHECK(p.phi1.terms() == expected1);
  CHECK(p.phi2.terms() == expected2);

  // Region radii from the joint growth estimate (M = 1 here).
  CHECK(p.radius == doctest::Approx(0.25));
  REQUIRE(p.radius_xprime);
  CHECK(*p.radius_xprime == doctest::Approx(0.5));
}

TEST_CASE("many-particle split of a pullback polynomial") {
  // u = (x1 o K) * x'_1 = pullback in y of psi(x, x') = x1 x'_1.
  const ExactPolynomial& k1 = ks_components()[0];
  TruncatedSeries u(7, 3);
  u.set_even(true);
  for (const auto& [exp, coeff] : k1.terms()) {
    std::vector<int> e = exp.exponents();
    e.insert(e.end(), {1, 0, 0});
    u.add_term(MultiIndex(std::move(e)), coeff);
  }
  SplitPair p = split_n_particle(u);
  ExactPolynomial expected(6);
  expected.add_term(MultiIndex({1, 0, 0, 1, 0, 0}), Rational(1));
  CHECK(p.phi1.terms() == expected);
  CHECK(p.phi2.is_zero());
}

TEST_CASE("many-particle split reports the offending slice") {
  TruncatedSeries u(7, 4);
  u.add_term(MultiIndex({2, 0, 0, 0, 1, 0, 0}), Rational(1));
  try {
    split_n_particle(u);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_l_annihilated);
    CHECK(std::string(e.what()).find("gamma = [1,0,0]") != std::string::npos);
  }
}

TEST_CASE("truncation bookkeeping") {
  Rng rng(83);
  TruncatedSeries s = recombine(random_pair(rng, 4));  // max_degree 8
  REQUIRE(s.max_degree() == 8);
  SplitPair p = split_even_series(s);
  CHECK(p.phi1.max_degree() == 4);
  CHECK(p.phi2.max_degree() == 3);
}
