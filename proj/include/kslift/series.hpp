#pragma once

#include <optional>
#include <vector>

#include "kslift/polynomial.hpp"

namespace kslift {

/// Growth constants (C, M) with |c_beta| <= C M^{|beta|} for every stored
/// coefficient of a series.
struct GrowthBound {
  double C = 0;
  double M = 0;
};

/// Degree-truncated power series about a center. The leading block of
/// coordinates is the one the transform acts on: four of them in the
/// (y, x') layout (dim = 4 + 3m), three in the (x, x') layout
/// (dim = 3 + 3m). `even` asserts that every term has even leading-block
/// order. Exponents are taken relative to the center, whose leading-block
/// entries must vanish.
class TruncatedSeries {
 public:
  TruncatedSeries(int dim, int max_degree)
      : max_degree_(max_degree),
        center_(static_cast<size_t>(dim), Rational(0)),
        terms_(dim) {
    require(max_degree >= 0, ErrorCode::invalid_input,
            "max_degree must be nonnegative");
  }

  int dim() const { return terms_.dim(); }
  int max_degree() const { return max_degree_; }
  int y_block_len() const {
    if (dim() >= 4 && dim() % 3 == 1) return 4;  // (y, x') layout
    if (dim() % 3 == 0) return 3;                // (x, x') layout
    return dim();
  }

  const std::vector<Rational>& center() const { return center_; }
  void set_center(std::vector<Rational> center);

  bool even() const { return even_; }
  void set_even(bool even) { even_ = even; }

  const std::optional<GrowthBound>& growth() const { return growth_; }
  void set_growth(std::optional<GrowthBound> g) { growth_ = std::move(g); }

  const ExactPolynomial& terms() const { return terms_; }

  void add_term(const MultiIndex& exponents, const Rational& coefficient) {
    require(exponents.order() <= max_degree_, ErrorCode::invalid_input,
            "term order exceeds max_degree");
    terms_.add_term(exponents, coefficient);
  }

  bool is_zero() const { return terms_.is_zero(); }

  /// Checks the evenness flag against the stored terms.
  bool even_terms_consistent() const;

  bool operator==(const TruncatedSeries& other) const {
    return max_degree_ == other.max_degree_ && center_ == other.center_ &&
           even_ == other.even_ && terms_ == other.terms_;
  }

 private:
  int max_degree_;
  std::vector<Rational> center_;
  bool even_ = false;
  std::optional<GrowthBound> growth_;
  ExactPolynomial terms_;
};

/// Canonical growth estimate from the stored coefficients:
///   M = max(1, max_{|beta|>=1} |c_beta|^{1/|beta|}),
///   C = max_beta |c_beta| M^{-|beta|},
/// with C nudged upward by ulps until every stored coefficient satisfies
/// the bound in double arithmetic. Rejects the zero series.
GrowthBound estimate_growth(const TruncatedSeries& s);

/// R = 10 max_n n^4 2^{-n} = 202.5, attained at n = 6.
extern const double kLayerBoundR;

struct RadiusReport {
  double C_tilde = 0;  // R * C
  double M_tilde = 0;  // 2 M^2
  double radius = 0;   // 1 / (4 M_tilde), strictly below the required 1 / (2 M_tilde)
};

RadiusReport growth_to_radius(const GrowthBound& g);

}  // namespace kslift
