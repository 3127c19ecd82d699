#pragma once

#include <utility>
#include <vector>

#include "kslift/polynomial.hpp"

namespace kslift {

/// Unique expansion Q = sum_j |y|^{2j} H_{m-2j} of a homogeneous Q of
/// degree m into harmonic homogeneous layers. Zero layers are omitted.
struct CanonicalDecomposition {
  int dim = 0;
  int degree = 0;
  /// Pairs (j, H_{degree - 2j}), j strictly increasing.
  std::vector<std::pair<int, HomogeneousPolynomial>> layers;

  /// Re-assembles sum_j |y|^{2j} H_{degree-2j}.
  ExactPolynomial recombine() const;
};

/// Decomposes Q into harmonic layers by peeling from the deepest layer:
/// applying the Laplacian j times maps |y|^{2j} H to a known positive
/// multiple of H and kills every shallower layer, so each layer is
/// recovered by exact rational division.
CanonicalDecomposition canonical_decompose(const HomogeneousPolynomial& q);

inline bool is_harmonic(const ExactPolynomial& p) {
  return laplacian(p).is_zero();
}

/// Inverts the pullback on L-annihilated harmonic polynomials: given P on
/// R^4, harmonic and homogeneous of even degree 2k with L P = 0, returns
/// the unique harmonic Y on R^3, homogeneous of degree k, with Y o K = P.
///
/// The coefficients of Y are obtained from an exact linear solve matching
/// the coefficients of Y o K against P; the solve is backed by a cached
/// per-degree factorization and the result is re-verified by exact
/// pullback, so an inconsistent system (impossible for valid input) is
/// reported as an internal error.
HomogeneousPolynomial hopf_descend(const HomogeneousPolynomial& p);

/// Sup bound (d+1)/sqrt(Vol(S^3)) for an L^2(S^3)-normalized harmonic
/// homogeneous polynomial of degree d, with Vol(S^3) = 2 pi^2.
double harmonic_sup_bound(int d);

}  // namespace kslift
