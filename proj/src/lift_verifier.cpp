#include "kslift/lift_verifier.hpp"

#include <cmath>

#include "kslift/quadrature.hpp"

namespace kslift {

namespace {

Eigen::Matrix<double, 3, 4> ks_jacobian(const Eigen::Vector4d& y) {
  Eigen::Matrix<double, 3, 4> j;
  j << 2 * y[0], -2 * y[1], -2 * y[2], 2 * y[3],  //
      2 * y[1], 2 * y[0], -2 * y[3], -2 * y[2],   //
      2 * y[2], 2 * y[3], 2 * y[0], 2 * y[1];
  return j;
}

const std::array<Eigen::Matrix4d, 3>& ks_component_hessians() {
  static const std::array<Eigen::Matrix4d, 3> h = [] {
    std::array<Eigen::Matrix4d, 3> out;
    out[0] = Eigen::Vector4d(2, -2, -2, 2).asDiagonal();
    out[1].setZero();
    out[1](0, 1) = out[1](1, 0) = 2;
    out[1](2, 3) = out[1](3, 2) = -2;
    out[2].setZero();
    out[2](0, 2) = out[2](2, 0) = 2;
    out[2](1, 3) = out[2](3, 1) = 2;
    return out;
  }();
  return h;
}

// psi(K(y), x') as a plain value function of (y, x'), for the
// finite-difference route.
double lifted_value(const ScalarField& psi, const Eigen::VectorXd& w) {
  return psi.value(lift_point(w));
}

double lifted_fd_block_laplacian(const ScalarField& psi,
                                 const Eigen::VectorXd& w, int start,
                                 int len) {
  double h = 1e-3 * (1.0 + w.norm());
  double coarse = 0, fine = 0;
  for (int i = start; i < start + len; ++i) {
    auto plain = [&](double step) {
      Eigen::VectorXd p = w;
      auto at = [&](double offset) {
        p[i] = w[i] + offset;
        return lifted_value(psi, p);
      };
      return (-at(2 * step) + 16 * at(step) - 30 * at(0) + 16 * at(-step) -
              at(-2 * step)) /
             (12 * step * step);
    };
    coarse += plain(h);
    fine += plain(0.5 * h);
  }
  return (16.0 * fine - coarse) / 15.0;
}

}  // namespace

double default_tolerance(DerivativeMode mode) {
  return mode == DerivativeMode::analytic ? 1e-9 : 1e-4;
}

Eigen::VectorXd lift_point(const Eigen::VectorXd& w) {
  require(w.size() >= 4, ErrorCode::dimension_mismatch,
          "lifted point needs at least the four y coordinates");
  Eigen::VectorXd z(w.size() - 1);
  z.head<3>() = ks_map(Eigen::Vector4d(w.head<4>()));
  z.tail(w.size() - 4) = w.tail(w.size() - 4);
  return z;
}

Jet lifted_jet(const ScalarField& psi, const Eigen::VectorXd& w) {
  int d_tail = static_cast<int>(w.size()) - 4;
  Eigen::VectorXd z = lift_point(w);
  Jet down = psi.jet(z);

  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(3 + d_tail, 4 + d_tail);
  j.topLeftCorner<3, 4>() = ks_jacobian(Eigen::Vector4d(w.head<4>()));
  j.bottomRightCorner(d_tail, d_tail).setIdentity();

  Jet up(4 + d_tail);
  up.value = down.value;
  up.grad = j.transpose() * down.grad;
  up.hess = j.transpose() * down.hess * j;
  for (int k = 0; k < 3; ++k)
    up.hess.topLeftCorner<4, 4>() += down.grad[k] * ks_component_hessians()[static_cast<size_t>(k)];
  return up;
}

double residual_one_particle_at(const ScalarField& phiK, const ScalarField& w1,
                                const ScalarField& w2, const ScalarField& f1,
                                const ScalarField& f2,
                                const Eigen::Vector4d& y, DerivativeMode mode) {
  double rho_sq = y.squaredNorm();
  require(rho_sq > 0, ErrorCode::evaluation_domain,
          "the lifted equation is checked away from y = 0");
  Eigen::VectorXd yv = y;
  double lap = mode == DerivativeMode::analytic
                   ? phiK.jet(yv).laplacian(0, 4)
                   : fd_block_laplacian(phiK, yv, 0, 4);
  Eigen::VectorXd x = ks_map(y);
  double value = phiK.value(yv);
  double lhs = -lap + 4.0 * (w1.value(x) + rho_sq * w2.value(x)) * value;
  double rhs = 4.0 * (f1.value(x) + rho_sq * f2.value(x));
  return std::abs(lhs - rhs);
}

ResidualReport residual_one_particle(
    const ScalarField& phiK, const ScalarField& w1, const ScalarField& w2,
    const ScalarField& f1, const ScalarField& f2,
    const std::vector<Eigen::Vector4d>& points, double tolerance,
    DerivativeMode mode) {
  ResidualReport report;
  report.points = static_cast<int>(points.size());
  report.tolerance = tolerance;
  for (const auto& y : points)
    report.max_residual = std::max(
        report.max_residual, residual_one_particle_at(phiK, w1, w2, f1, f2, y, mode));
  report.pass = report.max_residual <= tolerance;
  return report;
}

void LiftProblem::validate() const {
  require(N >= 1, ErrorCode::invalid_input, "particle count must be positive");
  require(region_y > 0 && (N == 1 || region_xprime > 0),
          ErrorCode::invalid_input, "region radii must be positive");
  require(static_cast<int>(xprime_center.size()) == xprime_dim(),
          ErrorCode::dimension_mismatch,
          "x' center dimension does not match the particle count");
  require(W.node() != nullptr && W.dim() == 3 + xprime_dim(),
          ErrorCode::dimension_mismatch,
          "W must live on R^3 x R^{3N-3}");
}

bool LiftProblem::contains(const Eigen::VectorXd& w) const {
  if (static_cast<int>(w.size()) != 4 + xprime_dim()) return false;
  if (w.head<4>().norm() >= region_y) return false;
  if (N > 1 &&
      (w.tail(xprime_dim()) - xprime_center).norm() >= region_xprime)
    return false;
  return true;
}

double grusin_apply(const ScalarField& u, const LiftProblem& p,
                    const Eigen::VectorXd& point, DerivativeMode mode) {
  p.validate();
  require(u.dim() == 4 + p.xprime_dim(), ErrorCode::dimension_mismatch,
          "u must live on R^4 x R^{3N-3}");
  require(p.contains(point), ErrorCode::evaluation_domain,
          "point lies outside the problem region");
  int d_tail = p.xprime_dim();
  double lap_y, lap_xp;
  if (mode == DerivativeMode::analytic) {
    Jet j = u.jet(point);
    lap_y = j.laplacian(0, 4);
    lap_xp = d_tail > 0 ? j.laplacian(4, d_tail) : 0.0;
  } else {
    lap_y = fd_block_laplacian(u, point, 0, 4);
    lap_xp = d_tail > 0 ? fd_block_laplacian(u, point, 4, d_tail) : 0.0;
  }
  double rho_sq = point.head<4>().squaredNorm();
  double value = u.value(point);
  double w_val = p.W.value(lift_point(point));
  return -lap_y - 4.0 * rho_sq * lap_xp + 4.0 * rho_sq * w_val * value -
         4.0 * p.Z * value;
}

std::pair<double, double> lift_identity_check(const ScalarField& psi,
                                              const LiftProblem& p,
                                              const Eigen::VectorXd& point,
                                              DerivativeMode mode) {
  p.validate();
  require(psi.dim() == 3 + p.xprime_dim(), ErrorCode::dimension_mismatch,
          "psi must live on R^3 x R^{3N-3}");
  require(static_cast<int>(point.size()) == 4 + p.xprime_dim(),
          ErrorCode::dimension_mismatch, "point must lie in R^4 x R^{3N-3}");
  double rho_sq = point.head<4>().squaredNorm();
  require(rho_sq > 0, ErrorCode::evaluation_domain,
          "the lift identity is checked away from y = 0");

  int d_tail = p.xprime_dim();
  Eigen::VectorXd z = lift_point(point);

  double u_lap_y, u_lap_xp, u_value;
  if (mode == DerivativeMode::analytic) {
    Jet up = lifted_jet(psi, point);
    u_value = up.value;
    u_lap_y = up.laplacian(0, 4);
    u_lap_xp = d_tail > 0 ? up.laplacian(4, d_tail) : 0.0;
  } else {
    u_value = psi.value(z);
    u_lap_y = lifted_fd_block_laplacian(psi, point, 0, 4);
    u_lap_xp = d_tail > 0 ? lifted_fd_block_laplacian(psi, point, 4, d_tail)
                          : 0.0;
  }
  double w_val = p.W.value(z);
  double lhs = -u_lap_y - 4.0 * rho_sq * u_lap_xp +
               4.0 * rho_sq * w_val * u_value - 4.0 * p.Z * u_value;

  double psi_lap_x, psi_lap_xp;
  if (mode == DerivativeMode::analytic) {
    Jet down = psi.jet(z);
    psi_lap_x = down.laplacian(0, 3);
    psi_lap_xp = d_tail > 0 ? down.laplacian(3, d_tail) : 0.0;
  } else {
    psi_lap_x = fd_block_laplacian(psi, z, 0, 3);
    psi_lap_xp = d_tail > 0 ? fd_block_laplacian(psi, z, 3, d_tail) : 0.0;
  }
  double psi_value = psi.value(z);
  double x_norm = z.head<3>().norm();
  double h_psi = -psi_lap_x - psi_lap_xp - (p.Z / x_norm) * psi_value +
                 w_val * psi_value;
  double rhs = 4.0 * rho_sq * h_psi;
  return {lhs, rhs};
}

ScalarField atomic_potential(double Z, double E, int N) {
  require(N >= 1, ErrorCode::invalid_input, "particle count must be positive");
  int dim = 3 * N;
  std::vector<ScalarField> terms;
  terms.push_back(ScalarField::constant(dim, -E));
  for (int j = 2; j <= N; ++j)
    terms.push_back(ScalarField::scale(
        -Z, ScalarField::pow(ScalarField::norm(dim, 3 * (j - 1), 3), -1)));
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j)
      terms.push_back(ScalarField::pow(
          ScalarField::norm_diff(dim, 3 * (i - 1), 3 * (j - 1), 3), -1));
  return ScalarField::sum(std::move(terms));
}

IsometryReport isometry_check(const ScalarField& phi, double r, double tol,
                              bool weighted, long budget) {
  require(phi.dim() == 3, ErrorCode::dimension_mismatch,
          "isometry check expects a field on R^3");
  require(r > 0, ErrorCode::invalid_input, "radius must be positive");
  constexpr double kQuarterPi = 0.78539816339744830961566084582;

  auto lhs_fixed = [&](int n) {
    return integrate_ball4(
        [&](const Eigen::Vector4d& y) {
          double v = phi.value(ks_map(y));
          return v * v;
        },
        std::sqrt(r), weighted ? 2 : 0, n);
  };
  auto lhs_cost = [](int n) { return 4L * n * n * n * n; };
  auto rhs_fixed = [&](int n) {
    return kQuarterPi * integrate_ball3(
                            [&](const Eigen::Vector3d& x) {
                              double v = phi.value(x);
                              return v * v;
                            },
                            r, weighted ? 0 : -1, n);
  };
  auto rhs_cost = [](int n) { return 2L * n * n * n; };

  // Quadrature error must sit clearly below the comparison tolerance.
  double qtol = 0.05 * tol;
  AdaptiveResult lhs = adapt_quadrature(lhs_fixed, lhs_cost, qtol, 8, budget);
  require(lhs.converged, ErrorCode::quadrature_budget,
          "B_4 quadrature did not converge within budget");
  AdaptiveResult rhs = adapt_quadrature(rhs_fixed, rhs_cost, qtol, 8, budget);
  require(rhs.converged, ErrorCode::quadrature_budget,
          "B_3 quadrature did not converge within budget");

  IsometryReport report;
  report.lhs = lhs.value;
  report.rhs = rhs.value;
  report.tolerance = tol;
  report.evaluations = lhs.evaluations + rhs.evaluations;
  report.pass = std::abs(lhs.value - rhs.value) <=
                tol * std::max({1.0, std::abs(lhs.value), std::abs(rhs.value)});
  return report;
}

}  // namespace kslift
