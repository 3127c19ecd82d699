#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>

#include "kslift/rational.hpp"

namespace kslift {

/// Deterministic sampling: all mappings from raw 64-bit draws to values are
/// spelled out here, so a fixed seed yields identical streams on every
/// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform integer in [a, b].
  int uniform_int(int a, int b) {
    return a + static_cast<int>(gen_() % static_cast<std::uint64_t>(b - a + 1));
  }

  double gaussian() {
    // Box-Muller; one value per call keeps the stream position simple.
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Eigen::VectorXd direction(int dim) {
    Eigen::VectorXd v(dim);
    do {
      for (int i = 0; i < dim; ++i) v[i] = gaussian();
    } while (v.norm() < 1e-12);
    return v / v.norm();
  }

  /// Uniform radius times uniform direction within [rmin, rmax].
  Eigen::VectorXd annulus(int dim, double rmin, double rmax) {
    return uniform(rmin, rmax) * direction(dim);
  }

  Rational small_rational(int max_num, int max_den) {
    return Rational(uniform_int(-max_num, max_num), uniform_int(1, max_den));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace kslift
