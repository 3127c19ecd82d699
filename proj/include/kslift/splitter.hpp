#pragma once

#include <optional>
#include <vector>

#include "kslift/harmonic.hpp"
#include "kslift/series.hpp"

namespace kslift {

/// The two analytic halves of phi = phi1 + |x| phi2, together with the
/// radius in |x| (and, for the many-particle case, in |x' - x0'|) on which
/// the split is certified to converge. An infinite radius marks the
/// degenerate zero input.
struct SplitPair {
  TruncatedSeries phi1;
  TruncatedSeries phi2;
  double radius = 0;
  std::optional<double> radius_xprime;
};

/// One descended layer Y_{n-j} of the per-degree pipeline: the input layer
/// of y-degree 2n contributed |x|^j Y_{n-j}(x), routed into phi1 for even j
/// and into phi2 for odd j.
struct SplitLayer {
  int n = 0;
  int j = 0;
  HomogeneousPolynomial y_layer;
};

/// Splits an even series g on R^4 (necessarily of the form phi o K) into
/// the pair (phi1, phi2) on R^3 with
///   phi(x) = phi1(x) + |x| phi2(x).
///
/// Per y-degree 2n: the homogeneous layer is checked to be L-annihilated,
/// canonically decomposed into harmonic layers, each layer descended
/// through the Hopf map, and the results routed by the parity of j. The
/// input layer of degree 2n determines the output layers of x-degree n
/// (phi1) and n-1 (phi2) exactly, so truncation at y-degree 2N yields phi1
/// complete through x-degree N and phi2 complete through x-degree N-1.
///
/// Errors: evenness_violation if any odd-order term is present;
/// not_l_annihilated if some layer fails L Q = 0 (the input is then not a
/// pullback).
SplitPair split_even_series(const TruncatedSeries& s,
                            std::vector<SplitLayer>* layers = nullptr);

/// Inverse of the split: pullback(phi1) + |y|^2 pullback(phi2), pulling
/// back the leading three-variable block and carrying any x'-variables
/// through unchanged.
TruncatedSeries recombine(const SplitPair& p);

/// Many-particle split of a series u(y, x') on R^4 x R^{3N-3}, even in the
/// y-block: applies the one-particle split per x'-slice and reassembles.
/// The certified region is |x| < 1/(4 M^2), |x' - x0'| < 1/(2 M) with M
/// from the joint growth estimate.
SplitPair split_n_particle(const TruncatedSeries& u,
                           std::vector<SplitLayer>* layers = nullptr);

/// Termwise equality of two split pairs truncated at the same degrees;
/// the split of a given series is unique, so this implements equality of
/// represented functions.
bool split_uniqueness_check(const SplitPair& p, const SplitPair& q);

}  // namespace kslift
