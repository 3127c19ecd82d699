#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>

#include "kslift/polynomial.hpp"

namespace kslift {

/// The Kustaanheimo-Stiefel map K: R^4 -> R^3,
///   K(y) = (y1^2 - y2^2 - y3^2 + y4^2,
///           2(y1 y2 - y3 y4),
///           2(y1 y3 + y2 y4)),
/// which satisfies |K(y)| = |y|^2. Templated on the scalar so the norm
/// identity can be checked in exact rational arithmetic as well as in
/// floating point.
template <typename Scalar>
std::array<Scalar, 3> ks_map(const std::array<Scalar, 4>& y) {
  const Scalar &y1 = y[0], &y2 = y[1], &y3 = y[2], &y4 = y[3];
  return {y1 * y1 - y2 * y2 - y3 * y3 + y4 * y4,
          Scalar(2) * (y1 * y2 - y3 * y4), Scalar(2) * (y1 * y3 + y2 * y4)};
}

inline Eigen::Vector3d ks_map(const Eigen::Vector4d& y) {
  auto x = ks_map<double>({y[0], y[1], y[2], y[3]});
  return {x[0], x[1], x[2]};
}

/// The three component polynomials of K (dim 4, homogeneous of degree 2).
const std::array<ExactPolynomial, 3>& ks_components();

/// Exact pullback f o K of a polynomial on R^3; the result is an even
/// polynomial on R^4 of twice the degree, annihilated by L.
ExactPolynomial pullback_polynomial(const ExactPolynomial& f);

/// Pullback of the single monomial x^alpha through K, memoized globally:
/// the same powers of the component polynomials recur in every descent
/// solve and verification.
const ExactPolynomial& ks_monomial_pullback(const MultiIndex& alpha);

/// Coordinates (r1, theta1, r2, theta2) with
///   (y1, y4) = r1 (cos theta1, sin theta1),
///   (y3, y2) = r2 (cos theta2, sin theta2).
struct DoublePolar {
  double r1 = 0;
  double r2 = 0;
  double theta1 = 0;
  double theta2 = 0;
};

Eigen::Vector4d from_double_polar(const DoublePolar& c);
DoublePolar to_double_polar(const Eigen::Vector4d& y);

/// K in double polar form: (r1^2 - r2^2, -2 r1 r2 sin(theta1 - theta2),
/// 2 r1 r2 cos(theta1 - theta2)).
Eigen::Vector3d ks_in_polar(const DoublePolar& c);

/// Jacobian determinant of the fixed-theta2 chart
/// (r1, r2, theta1) -> K(y), equal to 8 r1 r2 (r1^2 + r2^2).
double jacobian_det(const DoublePolar& c);

/// The fiber K^{-1}({x}): a circle of radius |x|^{1/2} for x != 0, the
/// single point 0 for x = 0. On the x1-axis the inversion phase is
/// undefined and the fiber is tagged as the C+ (x1 > 0) or C- (x1 < 0)
/// coordinate circle instead.
struct FiberDescription {
  enum class Axis { none, plus, minus };

  double r1 = 0;
  double r2 = 0;
  std::optional<double> phase;  // in [0, 2pi); empty on the axis and at 0
  Axis axis = Axis::none;
  bool is_point = false;
  double center_radius = 0;  // sqrt(r1^2 + r2^2) = |x|^{1/2}

  /// Point on the fiber at parameter t; 2pi-periodic in t.
  Eigen::Vector4d point_at(double t) const;
};

FiberDescription fiber(const Eigen::Vector3d& x);

/// |(Delta f)(K(y)) - Delta(f o K)(y) / (4 |y|^2)| at a single y != 0.
double lift_laplacian_residual(const ExactPolynomial& f,
                               const Eigen::Vector4d& y);

/// Exact polynomial form of the Laplacian lift identity:
/// Delta(f o K) == 4 |y|^2 ((Delta f) o K).
bool lift_laplacian_identity_exact(const ExactPolynomial& f);

}  // namespace kslift
