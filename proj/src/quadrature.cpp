#include "kslift/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "kslift/errors.hpp"

namespace kslift {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  // Newton iteration on P_n from the Chebyshev initial guess.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<size_t>(i)] = x;
    rule.weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  require(n >= 1, ErrorCode::invalid_input, "quadrature order must be positive");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double integrate_ball3(const std::function<double(const Eigen::Vector3d&)>& f,
                       double r, int radial_power, int n) {
  const GaussRule& g = gauss_legendre(n);
  int n_phi = 2 * n;
  CompensatedSum total;
  for (int ir = 0; ir < n; ++ir) {
    double rho = 0.5 * r * (g.nodes[static_cast<size_t>(ir)] + 1.0);
    double wr = 0.5 * r * g.weights[static_cast<size_t>(ir)] *
                std::pow(rho, 2 + radial_power);
    for (int im = 0; im < n; ++im) {
      double mu = g.nodes[static_cast<size_t>(im)];  // cos(theta)
      double wm = g.weights[static_cast<size_t>(im)];
      double sin_theta = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      for (int ip = 0; ip < n_phi; ++ip) {
        double phi = 2.0 * kPi * ip / n_phi;
        double wp = 2.0 * kPi / n_phi;
        Eigen::Vector3d x(rho * sin_theta * std::cos(phi),
                          rho * sin_theta * std::sin(phi), rho * mu);
        total.add(wr * wm * wp * f(x));
      }
    }
  }
  return total.value();
}

double integrate_ball4(const std::function<double(const Eigen::Vector4d&)>& f,
                       double R, int radial_power, int n) {
  const GaussRule& g = gauss_legendre(n);
  int n_ang = 2 * n;
  double w_ang = 2.0 * kPi / n_ang;
  CompensatedSum total;
  for (int ir = 0; ir < n; ++ir) {
    double rho = 0.5 * R * (g.nodes[static_cast<size_t>(ir)] + 1.0);
    double wr = 0.5 * R * g.weights[static_cast<size_t>(ir)] *
                std::pow(rho, 3 + radial_power);
    for (int ia = 0; ia < n; ++ia) {
      // alpha in (0, pi/2); volume element rho^3 cos(alpha) sin(alpha).
      double alpha = 0.25 * kPi * (g.nodes[static_cast<size_t>(ia)] + 1.0);
      double wa = 0.25 * kPi * g.weights[static_cast<size_t>(ia)] *
                  std::cos(alpha) * std::sin(alpha);
      double r1 = rho * std::cos(alpha);
      double r2 = rho * std::sin(alpha);
      for (int i1 = 0; i1 < n_ang; ++i1) {
        double t1 = w_ang * i1;
        double c1 = std::cos(t1), s1 = std::sin(t1);
        for (int i2 = 0; i2 < n_ang; ++i2) {
          double t2 = w_ang * i2;
          Eigen::Vector4d y(r1 * c1, r2 * std::sin(t2), r2 * std::cos(t2),
                            r1 * s1);
          total.add(wr * wa * w_ang * w_ang * f(y));
        }
      }
    }
  }
  return total.value();
}

AdaptiveResult adapt_quadrature(const std::function<double(int)>& fixed,
                                const std::function<long(int)>& cost,
                                double tol, int n0, long budget) {
  AdaptiveResult result;
  int n = n0;
  result.evaluations = cost(n);
  double prev = fixed(n);
  while (true) {
    int next = 2 * n;
    long c = cost(next);
    if (result.evaluations + c > budget) {
      result.value = prev;
      result.final_order = n;
      return result;  // not converged
    }
    double cur = fixed(next);
    result.evaluations += c;
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) {
      result.value = cur;
      result.converged = true;
      result.final_order = next;
      return result;
    }
    prev = cur;
    n = next;
  }
}

}  // namespace kslift
