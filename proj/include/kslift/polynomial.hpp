#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "kslift/multi_index.hpp"
#include "kslift/rational.hpp"

namespace kslift {

namespace detail {
template <typename Scalar>
inline Scalar scalar_cast(const Rational& q) {
  return static_cast<Scalar>(q);
}
template <>
inline double scalar_cast<double>(const Rational& q) {
  return to_double(q);
}
template <>
inline Rational scalar_cast<Rational>(const Rational& q) {
  return q;
}
}  // namespace detail

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are stored in a graded-lex ordered map; zero coefficients are never
/// stored. Values are immutable in spirit: every operation returns a new
/// polynomial, so evaluation from multiple threads needs no coordination.
class ExactPolynomial {
 public:
  using TermMap = std::map<MultiIndex, Rational>;

  explicit ExactPolynomial(int dim) : dim_(dim) {
    require(dim >= 1, ErrorCode::invalid_input,
            "polynomial dimension must be at least 1");
  }

  static ExactPolynomial zero(int dim) { return ExactPolynomial(dim); }

  static ExactPolynomial constant(int dim, const Rational& value) {
    ExactPolynomial p(dim);
    p.add_term(MultiIndex::zero(dim), value);
    return p;
  }

  static ExactPolynomial monomial(const MultiIndex& exponents,
                                  const Rational& coefficient) {
    ExactPolynomial p(exponents.dim());
    p.add_term(exponents, coefficient);
    return p;
  }

  /// The coordinate polynomial x_var.
  static ExactPolynomial variable(int dim, int var) {
    return monomial(MultiIndex::unit(dim, var), Rational(1));
  }

  /// x_1^2 + ... + x_dim^2.
  static ExactPolynomial norm_squared(int dim);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.order();
  }

  bool is_homogeneous() const {
    return terms_.empty() ||
           terms_.begin()->first.order() == terms_.rbegin()->first.order();
  }

  Rational coefficient(const MultiIndex& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Accumulates `value` onto the coefficient of `exponents`, erasing the
  /// term if the sum cancels.
  void add_term(const MultiIndex& exponents, const Rational& value);

  ExactPolynomial operator-() const;
  ExactPolynomial& operator+=(const ExactPolynomial& other);
  ExactPolynomial& operator-=(const ExactPolynomial& other);
  ExactPolynomial& operator*=(const Rational& scalar);

  friend ExactPolynomial operator+(ExactPolynomial a,
                                   const ExactPolynomial& b) {
    a += b;
    return a;
  }
  friend ExactPolynomial operator-(ExactPolynomial a,
                                   const ExactPolynomial& b) {
    a -= b;
    return a;
  }
  friend ExactPolynomial operator*(const ExactPolynomial& a,
                                   const ExactPolynomial& b);
  friend ExactPolynomial operator*(ExactPolynomial p, const Rational& s) {
    p *= s;
    return p;
  }
  friend ExactPolynomial operator*(const Rational& s, ExactPolynomial p) {
    p *= s;
    return p;
  }

  bool operator==(const ExactPolynomial& other) const = default;

  template <typename Scalar>
  Scalar evaluate(std::span<const Scalar> point) const {
    require(static_cast<int>(point.size()) == dim_,
            ErrorCode::dimension_mismatch,
            "evaluation point has wrong dimension");
    Scalar acc{0};
    for (const auto& [exp, coeff] : terms_) {
      Scalar term = detail::scalar_cast<Scalar>(coeff);
      for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < exp[i]; ++k) term *= point[static_cast<size_t>(i)];
      acc += term;
    }
    return acc;
  }

  template <typename Scalar>
  Scalar evaluate(const std::vector<Scalar>& point) const {
    return evaluate(std::span<const Scalar>(point));
  }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int dim_;
  TermMap terms_;
};

/// A polynomial together with its certified homogeneity degree.
class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial(ExactPolynomial base, int degree)
      : base_(std::move(base)), degree_(degree) {
    for (const auto& [exp, coeff] : base_.terms())
      require(exp.order() == degree, ErrorCode::not_homogeneous,
              "polynomial is not homogeneous of the claimed degree");
  }

  const ExactPolynomial& base() const { return base_; }
  int degree() const { return degree_; }
  int dim() const { return base_.dim(); }
  bool is_zero() const { return base_.is_zero(); }

  bool operator==(const HomogeneousPolynomial& other) const = default;

 private:
  ExactPolynomial base_;
  int degree_;
};

ExactPolynomial derivative(const ExactPolynomial& p, int var);

/// Sum of the second derivatives over all variables.
ExactPolynomial laplacian(const ExactPolynomial& p);

/// Sum of the second derivatives over variables [start, start + len).
ExactPolynomial block_laplacian(const ExactPolynomial& p, int start, int len);

/// The angular operator y1 d/dy4 - y4 d/dy1 + y3 d/dy2 - y2 d/dy3 on R^4.
ExactPolynomial apply_L(const ExactPolynomial& p);

ExactPolynomial pow(const ExactPolynomial& p, int exponent);

/// Splits p into its homogeneous parts, strictly increasing in degree.
/// The zero polynomial yields an empty list.
std::vector<HomogeneousPolynomial> homogeneous_components(
    const ExactPolynomial& p);

/// #{sigma in N^k : |sigma| = l} = C(k + l - 1, k - 1). Requires k >= 1.
Integer count_multi_indices(int k, int l);

}  // namespace kslift
