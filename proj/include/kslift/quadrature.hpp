#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace kslift {

/// Neumaier compensated accumulation; keeps quadrature sums deterministic
/// and accurate for a fixed evaluation order.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

/// Integral over the ball B_3(0, r) of f(x) |x|^radial_power dx, in
/// radial-angular form: Gauss in the radius and in cos(theta), trapezoid
/// in the azimuth. radial_power = -1 absorbs an integrable 1/|x|
/// singularity into the radial Jacobian.
double integrate_ball3(const std::function<double(const Eigen::Vector3d&)>& f,
                       double r, int radial_power, int n);

/// Integral over the ball B_4(0, R) of f(y) |y|^radial_power dy in double
/// polar coordinates (r1, theta1, r2, theta2) with r1 = rho cos(alpha),
/// r2 = rho sin(alpha); Gauss in rho and alpha, trapezoid in both angles.
double integrate_ball4(const std::function<double(const Eigen::Vector4d&)>& f,
                       double R, int radial_power, int n);

struct AdaptiveResult {
  double value = 0;
  bool converged = false;
  int final_order = 0;
  long evaluations = 0;
};

/// Runs `fixed(n)` on a doubling sequence of orders until two consecutive
/// values agree to `tol` (absolute + relative), within the given budget of
/// integrand evaluations.
AdaptiveResult adapt_quadrature(const std::function<double(int)>& fixed,
                                const std::function<long(int)>& cost,
                                double tol, int n0, long budget);

}  // namespace kslift
