#include "kslift/ks_transform.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace kslift {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w + 0.0;  // flush -0.0
}

std::array<ExactPolynomial, 3> make_ks_components() {
  auto mono = [](int a, int b, int c, int d, int coeff) {
    return ExactPolynomial::monomial(MultiIndex({a, b, c, d}),
                                     Rational(coeff));
  };
  ExactPolynomial k1 = mono(2, 0, 0, 0, 1) + mono(0, 2, 0, 0, -1) +
                       mono(0, 0, 2, 0, -1) + mono(0, 0, 0, 2, 1);
  ExactPolynomial k2 = mono(1, 1, 0, 0, 2) + mono(0, 0, 1, 1, -2);
  ExactPolynomial k3 = mono(1, 0, 1, 0, 2) + mono(0, 1, 0, 1, 2);
  return {k1, k2, k3};
}

}  // namespace

const std::array<ExactPolynomial, 3>& ks_components() {
  static const std::array<ExactPolynomial, 3> components =
      make_ks_components();
  return components;
}

const ExactPolynomial& ks_monomial_pullback(const MultiIndex& alpha) {
  require(alpha.dim() == 3, ErrorCode::dimension_mismatch,
          "monomial pullback expects a three-variable exponent");
  static std::map<MultiIndex, ExactPolynomial> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(alpha);
  if (it != cache.end()) return it->second;

  ExactPolynomial value(4);
  if (alpha.order() == 0) {
    value = ExactPolynomial::constant(4, Rational(1));
  } else {
    // Reduce along the last nonzero exponent so the recursion hits cached
    // lower-order products.
    int var = 2;
    while (alpha[var] == 0) --var;
    MultiIndex reduced = alpha.with(var, alpha[var] - 1);
    ExactPolynomial base = [&] {
      auto cached = cache.find(reduced);
      if (cached != cache.end()) return cached->second;
      ExactPolynomial acc = ExactPolynomial::constant(4, Rational(1));
      for (int i = 0; i < 3; ++i)
        if (reduced[i] > 0) acc = acc * pow(ks_components()[static_cast<size_t>(i)], reduced[i]);
      cache.emplace(reduced, acc);
      return acc;
    }();
    value = base * ks_components()[static_cast<size_t>(var)];
  }
  return cache.emplace(alpha, std::move(value)).first->second;
}

ExactPolynomial pullback_polynomial(const ExactPolynomial& f) {
  require(f.dim() == 3, ErrorCode::dimension_mismatch,
          "pullback expects a polynomial on R^3");
  ExactPolynomial out(4);
  for (const auto& [alpha, coeff] : f.terms()) {
    const ExactPolynomial& mono = ks_monomial_pullback(alpha);
    for (const auto& [beta, c] : mono.terms()) out.add_term(beta, coeff * c);
  }
  return out;
}

Eigen::Vector4d from_double_polar(const DoublePolar& c) {
  return {c.r1 * std::cos(c.theta1), c.r2 * std::sin(c.theta2),
          c.r2 * std::cos(c.theta2), c.r1 * std::sin(c.theta1)};
}

DoublePolar to_double_polar(const Eigen::Vector4d& y) {
  DoublePolar c;
  c.r1 = std::hypot(y[0], y[3]);
  c.r2 = std::hypot(y[2], y[1]);
  c.theta1 = c.r1 > 0 ? wrap_angle(std::atan2(y[3], y[0])) : 0.0;
  c.theta2 = c.r2 > 0 ? wrap_angle(std::atan2(y[1], y[2])) : 0.0;
  return c;
}

Eigen::Vector3d ks_in_polar(const DoublePolar& c) {
  double delta = c.theta1 - c.theta2;
  double cross = 2.0 * c.r1 * c.r2;
  return {c.r1 * c.r1 - c.r2 * c.r2, -cross * std::sin(delta),
          cross * std::cos(delta)};
}

double jacobian_det(const DoublePolar& c) {
  return 8.0 * c.r1 * c.r2 * (c.r1 * c.r1 + c.r2 * c.r2);
}

Eigen::Vector4d FiberDescription::point_at(double t) const {
  if (is_point) return Eigen::Vector4d::Zero();
  switch (axis) {
    case Axis::plus:
      return {r1 * std::cos(t), 0.0, 0.0, r1 * std::sin(t)};
    case Axis::minus:
      return {0.0, r2 * std::sin(t), r2 * std::cos(t), 0.0};
    case Axis::none:
      break;
  }
  // theta2 = t, theta1 = t + phase parametrizes {theta1 - theta2 = phase}.
  double theta1 = t + *phase;
  return {r1 * std::cos(theta1), r2 * std::sin(t), r2 * std::cos(t),
          r1 * std::sin(theta1)};
}

FiberDescription fiber(const Eigen::Vector3d& x) {
  FiberDescription f;
  double norm = x.norm();
  f.center_radius = std::sqrt(norm);
  if (norm == 0) {
    f.is_point = true;
    return f;
  }
  if (x[1] == 0 && x[2] == 0) {
    if (x[0] > 0) {
      f.axis = FiberDescription::Axis::plus;
      f.r1 = std::sqrt(x[0]);
      f.r2 = 0;
    } else {
      f.axis = FiberDescription::Axis::minus;
      f.r1 = 0;
      f.r2 = std::sqrt(-x[0]);
    }
    return f;
  }
  // r1^2 - r2^2 = x1 and r1^2 + r2^2 = |x| give the radii in closed form;
  // the remaining two equations determine the phase.
  f.r1 = std::sqrt(0.5 * (norm + x[0]));
  f.r2 = std::sqrt(0.5 * (norm - x[0]));
  f.phase = wrap_angle(std::atan2(-x[1], x[2]));
  return f;
}

double lift_laplacian_residual(const ExactPolynomial& f,
                               const Eigen::Vector4d& y) {
  require(f.dim() == 3, ErrorCode::dimension_mismatch,
          "lift residual expects a polynomial on R^3");
  double norm_sq = y.squaredNorm();
  require(norm_sq > 0, ErrorCode::evaluation_domain,
          "the pointwise lift identity is undefined at y = 0");
  Eigen::Vector3d x = ks_map(y);
  std::vector<double> px{x[0], x[1], x[2]};
  std::vector<double> py{y[0], y[1], y[2], y[3]};
  double lhs = laplacian(f).evaluate<double>(px);
  double rhs = laplacian(pullback_polynomial(f)).evaluate<double>(py) /
               (4.0 * norm_sq);
  return std::abs(lhs - rhs);
}

bool lift_laplacian_identity_exact(const ExactPolynomial& f) {
  ExactPolynomial lhs = laplacian(pullback_polynomial(f));
  ExactPolynomial rhs = ExactPolynomial::norm_squared(4) *
                        pullback_polynomial(laplacian(f)) * Rational(4);
  return lhs == rhs;
}

}  // namespace kslift
