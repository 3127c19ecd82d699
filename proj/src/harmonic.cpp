#include "kslift/harmonic.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "kslift/ks_transform.hpp"

namespace kslift {

namespace {

// Applies the Laplacian j times.
ExactPolynomial iterated_laplacian(ExactPolynomial p, int j) {
  for (int i = 0; i < j; ++i) p = laplacian(p);
  return p;
}

// Delta(|y|^{2a} H_s) = 2a (2s + 2a + n - 2) |y|^{2a-2} H_s for harmonic
// homogeneous H_s; iterating from a = j down to 1 gives the factor that
// Delta^j applies to the layer |y|^{2j} H_s.
Rational peel_factor(int j, int s, int dim) {
  Rational mu(1);
  for (int a = 1; a <= j; ++a) mu *= Rational(2 * a * (2 * s + 2 * a + dim - 2));
  return mu;
}

// Exact dense linear algebra for the descent solve. Kept deliberately
// small: row-select an invertible square subsystem once per degree, then
// every solve is a matrix-vector product.
using RationalMatrix = std::vector<std::vector<Rational>>;

// Gauss-Jordan inverse; the caller guarantees invertibility.
RationalMatrix invert(RationalMatrix a) {
  size_t n = a.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    require(pivot < n, ErrorCode::internal_error,
            "descent subsystem unexpectedly singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational d = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Coefficient-matching system for degree k: the columns are the monomials
// x^alpha with |alpha| = k, the rows a selected independent set of
// four-variable monomials y^beta with |beta| = 2k.
struct DescentSystem {
  std::vector<MultiIndex> columns;     // |alpha| = k, dim 3
  std::vector<MultiIndex> pivot_rows;  // |beta| = 2k, dim 4
  RationalMatrix inverse;              // of the selected square subsystem
};

const DescentSystem& descent_system(int k) {
  static std::map<int, DescentSystem> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  DescentSystem sys;
  sys.columns = multi_indices_of_order(3, k);
  size_t m = sys.columns.size();

  std::vector<const ExactPolynomial*> col_pullbacks;
  col_pullbacks.reserve(m);
  for (const auto& alpha : sys.columns)
    col_pullbacks.push_back(&ks_monomial_pullback(alpha));

  // Greedy row selection: reduce each candidate row against the pivots
  // found so far and keep it if anything survives.
  std::vector<std::vector<Rational>> reduced;  // echelon rows
  std::vector<size_t> lead;                    // leading column per row
  RationalMatrix selected;                     // original selected rows
  for (const MultiIndex& beta : multi_indices_of_order(4, 2 * k)) {
    std::vector<Rational> row(m);
    bool nonzero = false;
    for (size_t c = 0; c < m; ++c) {
      row[c] = col_pullbacks[c]->coefficient(beta);
      nonzero = nonzero || row[c] != 0;
    }
    if (!nonzero) continue;
    std::vector<Rational> work = row;
    for (size_t r = 0; r < reduced.size(); ++r) {
      if (work[lead[r]] == 0) continue;
      Rational f = work[lead[r]] / reduced[r][lead[r]];
      for (size_t c = 0; c < m; ++c) work[c] -= f * reduced[r][c];
    }
    size_t l = 0;
    while (l < m && work[l] == 0) ++l;
    if (l == m) continue;
    reduced.push_back(std::move(work));
    lead.push_back(l);
    selected.push_back(std::move(row));
    sys.pivot_rows.push_back(beta);
    if (selected.size() == m) break;
  }
  require(selected.size() == m, ErrorCode::internal_error,
          "pullback system is rank deficient");
  sys.inverse = invert(std::move(selected));
  return cache.emplace(k, std::move(sys)).first->second;
}

}  // namespace

ExactPolynomial CanonicalDecomposition::recombine() const {
  ExactPolynomial sum(dim);
  ExactPolynomial norm_sq = ExactPolynomial::norm_squared(dim);
  for (const auto& [j, h] : layers) sum += pow(norm_sq, j) * h.base();
  return sum;
}

CanonicalDecomposition canonical_decompose(const HomogeneousPolynomial& q) {
  int dim = q.dim();
  int m = q.degree();
  CanonicalDecomposition out;
  out.dim = dim;
  out.degree = m;
  if (q.is_zero()) return out;

  ExactPolynomial norm_sq = ExactPolynomial::norm_squared(dim);
  ExactPolynomial remainder = q.base();
  std::vector<std::pair<int, HomogeneousPolynomial>> layers;
  for (int j = m / 2; j >= 0; --j) {
    int s = m - 2 * j;
    ExactPolynomial h = iterated_laplacian(remainder, j);
    h *= Rational(1) / peel_factor(j, s, dim);
    if (!h.is_zero()) {
      remainder -= pow(norm_sq, j) * h;
      layers.emplace_back(j, HomogeneousPolynomial(std::move(h), s));
    }
  }
  require(remainder.is_zero(), ErrorCode::internal_error,
          "canonical decomposition left a nonzero remainder");
  out.layers.assign(layers.rbegin(), layers.rend());
  return out;
}

HomogeneousPolynomial hopf_descend(const HomogeneousPolynomial& p) {
  require(p.dim() == 4, ErrorCode::dimension_mismatch,
          "descent expects a polynomial on R^4");
  require(p.degree() % 2 == 0, ErrorCode::odd_degree,
          "descent expects an even-degree polynomial");
  require(is_harmonic(p.base()), ErrorCode::not_harmonic,
          "descent expects a harmonic polynomial");
  require(apply_L(p.base()).is_zero(), ErrorCode::not_l_annihilated,
          "descent expects an L-annihilated polynomial");

  int k = p.degree() / 2;
  if (p.is_zero())
    return HomogeneousPolynomial(ExactPolynomial::zero(3), k);
  if (k == 0)
    return HomogeneousPolynomial(
        ExactPolynomial::constant(3, p.base().coefficient(MultiIndex::zero(4))),
        0);

  const DescentSystem& sys = descent_system(k);
  size_t m = sys.columns.size();
  std::vector<Rational> rhs(m);
  for (size_t r = 0; r < m; ++r)
    rhs[r] = p.base().coefficient(sys.pivot_rows[r]);

  ExactPolynomial y(3);
  std::vector<Rational> coeffs(m, Rational(0));
  for (size_t r = 0; r < m; ++r) {
    Rational c(0);
    for (size_t c2 = 0; c2 < m; ++c2) c += sys.inverse[r][c2] * rhs[c2];
    coeffs[r] = std::move(c);
  }
  for (size_t c = 0; c < m; ++c)
    if (coeffs[c] != 0) y.add_term(sys.columns[c], coeffs[c]);

  // The selected rows determine Y uniquely; confirm the full system.
  require(pullback_polynomial(y) == p.base(), ErrorCode::internal_error,
          "descent solve is inconsistent with the full pullback");
  return HomogeneousPolynomial(std::move(y), k);
}

double harmonic_sup_bound(int d) {
  require(d >= 0, ErrorCode::invalid_input, "degree must be nonnegative");
  constexpr double vol_s3 = 2.0 * M_PI * M_PI;
  return (d + 1) / std::sqrt(vol_s3);
}

}  // namespace kslift
