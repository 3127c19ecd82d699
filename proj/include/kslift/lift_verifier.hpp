#pragma once

#include <utility>
#include <vector>

#include "kslift/ks_transform.hpp"
#include "kslift/scalar_field.hpp"

namespace kslift {

enum class DerivativeMode { analytic, finite_difference };

/// Default residual tolerances: analytic jets resolve the identities to
/// rounding, finite differences to the stencil order.
double default_tolerance(DerivativeMode mode);

/// (K(y), x'): the substitution through which every lifted quantity is
/// evaluated.
Eigen::VectorXd lift_point(const Eigen::VectorXd& w);

/// Jet of u(y, x') = psi(K(y), x') by the chain rule; the K components
/// have constant Hessians, so the composition is exact.
Jet lifted_jet(const ScalarField& psi, const Eigen::VectorXd& w);

struct ResidualReport {
  double max_residual = 0;
  int points = 0;
  double tolerance = 0;
  bool pass = false;
};

/// Residual of the lifted one-particle equation
///   (-Delta_y + 4 (W1_K + |y|^2 W2_K)) phi_K = 4 (F1_K + |y|^2 F2_K)
/// at a single y != 0. phiK lives on R^4, the potentials and
/// inhomogeneities on R^3.
double residual_one_particle_at(const ScalarField& phiK, const ScalarField& w1,
                                const ScalarField& w2, const ScalarField& f1,
                                const ScalarField& f2,
                                const Eigen::Vector4d& y,
                                DerivativeMode mode = DerivativeMode::analytic);

ResidualReport residual_one_particle(
    const ScalarField& phiK, const ScalarField& w1, const ScalarField& w2,
    const ScalarField& f1, const ScalarField& f2,
    const std::vector<Eigen::Vector4d>& points, double tolerance,
    DerivativeMode mode = DerivativeMode::analytic);

/// Data of a lifted problem: the operator
///   Q = -Delta_y - 4 |y|^2 Delta_{x'} + 4 |y|^2 W(K(y), x') - 4 Z
/// on the region |y| < region_y, |x' - xprime_center| < region_xprime.
/// W is given downstairs, on R^3 x R^{3N-3}; E is informational (already
/// folded into W for the eigenvalue problem).
struct LiftProblem {
  double Z = 0;
  double E = 0;
  int N = 1;
  ScalarField W;
  double region_y = 1;
  double region_xprime = 1;
  Eigen::VectorXd xprime_center;

  int xprime_dim() const { return 3 * (N - 1); }
  void validate() const;
  bool contains(const Eigen::VectorXd& w) const;
};

/// (Q u)(point) for a field u on R^4 x R^{3N-3}.
double grusin_apply(const ScalarField& u, const LiftProblem& p,
                    const Eigen::VectorXd& point,
                    DerivativeMode mode = DerivativeMode::analytic);

/// Both sides of the lift identity
///   (Q u)(y, x') = 4 |y|^2 ((H - E) psi)(K(y), x'),  u := psi(K(.), .),
/// with (H - E) psi = -Delta_x psi - Delta_{x'} psi - (Z/|x|) psi + W psi.
/// Holds for arbitrary twice-differentiable psi, not only eigenfunctions.
std::pair<double, double> lift_identity_check(
    const ScalarField& psi, const LiftProblem& p, const Eigen::VectorXd& point,
    DerivativeMode mode = DerivativeMode::analytic);

/// The atomic interaction V_E(x, x') = sum_{j>=2} -Z/|x_j|
/// + sum_{i<j} 1/|x_i - x_j| - E on R^{3N}, with x_1 = x.
ScalarField atomic_potential(double Z, double E, int N);

struct IsometryReport {
  double lhs = 0;
  double rhs = 0;
  double tolerance = 0;
  bool pass = false;
  long evaluations = 0;
};

/// Quadrature check of the pullback isometry on U = B_3(0, r):
///   integral over K^{-1}(U) of |phi(K(y))|^2 dy
///     = (pi/4) integral over U of |phi(x)|^2 / |x| dx,
/// or, in the weighted variant,
///   || |y| phi_K ||^2 = (pi/4) ||phi||^2_{L^2(U)}.
/// The two sides use independent quadratures (double polar over B_4 versus
/// radial-angular over B_3 with the singularity absorbed by the radial
/// Jacobian). Throws quadrature_budget if either side fails to converge.
IsometryReport isometry_check(const ScalarField& phi, double r, double tol,
                              bool weighted = false, long budget = 400000000L);

}  // namespace kslift
