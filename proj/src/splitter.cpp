#include "kslift/splitter.hpp"

#include <limits>
#include <map>

#include "kslift/ks_transform.hpp"

namespace kslift {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MultiIndex head(const MultiIndex& exp, int len) {
  std::vector<int> e(exp.exponents().begin(),
                     exp.exponents().begin() + len);
  return MultiIndex(std::move(e));
}

MultiIndex tail(const MultiIndex& exp, int from) {
  std::vector<int> e(exp.exponents().begin() + from, exp.exponents().end());
  return MultiIndex(std::move(e));
}

MultiIndex concat(const MultiIndex& a, const MultiIndex& b) {
  std::vector<int> e = a.exponents();
  e.insert(e.end(), b.exponents().begin(), b.exponents().end());
  return MultiIndex(std::move(e));
}

// Slices a polynomial by the exponents of the variables beyond `block`.
std::map<MultiIndex, ExactPolynomial> slices_by_tail(
    const ExactPolynomial& p, int block) {
  std::map<MultiIndex, ExactPolynomial> out;
  for (const auto& [exp, coeff] : p.terms()) {
    MultiIndex gamma = tail(exp, block);
    auto [it, inserted] =
        out.emplace(gamma, ExactPolynomial(block));
    it->second.add_term(head(exp, block), coeff);
  }
  return out;
}

// Core of the one-particle split, operating on the raw dim-4 polynomial of
// a slice. gamma_label is only used in error messages.
void split_slice(const ExactPolynomial& g, const std::string& gamma_label,
                 ExactPolynomial& phi1, ExactPolynomial& phi2,
                 const MultiIndex* gamma, std::vector<SplitLayer>* layers) {
  const ExactPolynomial norm_sq3 = ExactPolynomial::norm_squared(3);
  for (const HomogeneousPolynomial& q : homogeneous_components(g)) {
    require(q.degree() % 2 == 0, ErrorCode::evenness_violation,
            "series contains an odd-order term" + gamma_label);
    int n = q.degree() / 2;
    require(apply_L(q.base()).is_zero(), ErrorCode::not_l_annihilated,
            "layer of degree " + std::to_string(q.degree()) +
                " is not annihilated by L; the series is not a pullback" +
                gamma_label);
    for (const auto& [j, h] : canonical_decompose(q).layers) {
      HomogeneousPolynomial y = hopf_descend(h);
      if (layers) layers->push_back({n, j, y});
      // |x|^j Y_{n-j} with j even is the polynomial (|x|^2)^{j/2} Y; for
      // odd j the factor |x| is peeled off into the phi2 slot.
      if (j % 2 == 0) {
        ExactPolynomial term = pow(norm_sq3, j / 2) * y.base();
        if (gamma) {
          for (const auto& [alpha, c] : term.terms())
            phi1.add_term(concat(alpha, *gamma), c);
        } else {
          phi1 += term;
        }
      } else {
        ExactPolynomial term = pow(norm_sq3, (j - 1) / 2) * y.base();
        if (gamma) {
          for (const auto& [alpha, c] : term.terms())
            phi2.add_term(concat(alpha, *gamma), c);
        } else {
          phi2 += term;
        }
      }
    }
  }
}

std::string gamma_to_string(const MultiIndex& gamma) {
  std::string s = " (x' slice gamma = [";
  for (int i = 0; i < gamma.dim(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(gamma[i]);
  }
  return s + "])";
}

}  // namespace

SplitPair split_even_series(const TruncatedSeries& s,
                            std::vector<SplitLayer>* layers) {
  require(s.dim() == 4, ErrorCode::dimension_mismatch,
          "one-particle split expects a series on R^4");
  int n_max = s.max_degree() / 2;
  TruncatedSeries phi1(3, n_max);
  TruncatedSeries phi2(3, n_max > 0 ? n_max - 1 : 0);

  ExactPolynomial p1(3), p2(3);
  split_slice(s.terms(), "", p1, p2, nullptr, layers);
  for (const auto& [exp, coeff] : p1.terms()) phi1.add_term(exp, coeff);
  for (const auto& [exp, coeff] : p2.terms()) phi2.add_term(exp, coeff);

  SplitPair out{std::move(phi1), std::move(phi2), kInf, std::nullopt};
  if (!s.is_zero()) out.radius = growth_to_radius(estimate_growth(s)).radius;
  return out;
}

TruncatedSeries recombine(const SplitPair& p) {
  require(p.phi1.dim() == p.phi2.dim(), ErrorCode::dimension_mismatch,
          "split pair members have different dimensions");
  require(p.phi1.center() == p.phi2.center(), ErrorCode::invalid_input,
          "split pair members have different centers");
  int dim = p.phi1.dim();
  require(dim >= 3 && (dim - 3) % 3 == 0, ErrorCode::dimension_mismatch,
          "split pair dimension must be 3N");
  int tail_dim = dim - 3;

  int max_degree =
      2 * std::max(p.phi1.max_degree(), p.phi2.max_degree() + 1);
  TruncatedSeries out(4 + tail_dim, max_degree);
  out.set_even(true);
  if (tail_dim > 0) {
    std::vector<Rational> center(static_cast<size_t>(4 + tail_dim),
                                 Rational(0));
    for (int i = 0; i < tail_dim; ++i)
      center[static_cast<size_t>(4 + i)] = p.phi1.center()[static_cast<size_t>(3 + i)];
    out.set_center(std::move(center));
  }

  const ExactPolynomial norm_sq4 = ExactPolynomial::norm_squared(4);
  auto accumulate = [&](const TruncatedSeries& part, bool weighted) {
    for (const auto& [gamma, slice] : slices_by_tail(part.terms(), 3)) {
      ExactPolynomial lifted = pullback_polynomial(slice);
      if (weighted) lifted = lifted * norm_sq4;
      for (const auto& [beta, c] : lifted.terms())
        out.add_term(concat(beta, gamma), c);
    }
  };
  accumulate(p.phi1, false);
  accumulate(p.phi2, true);
  return out;
}

SplitPair split_n_particle(const TruncatedSeries& u,
                           std::vector<SplitLayer>* layers) {
  require(u.dim() > 4 && (u.dim() - 4) % 3 == 0, ErrorCode::dimension_mismatch,
          "many-particle split expects a series on R^4 x R^{3N-3}");
  int tail_dim = u.dim() - 4;

  TruncatedSeries phi1(3 + tail_dim, u.max_degree());
  TruncatedSeries phi2(3 + tail_dim, u.max_degree());
  std::vector<Rational> center(static_cast<size_t>(3 + tail_dim), Rational(0));
  for (int i = 0; i < tail_dim; ++i)
    center[static_cast<size_t>(3 + i)] = u.center()[static_cast<size_t>(4 + i)];
  phi1.set_center(center);
  phi2.set_center(std::move(center));

  ExactPolynomial p1(3 + tail_dim), p2(3 + tail_dim);
  for (const auto& [gamma, slice] : slices_by_tail(u.terms(), 4))
    split_slice(slice, gamma_to_string(gamma), p1, p2, &gamma, layers);
  for (const auto& [exp, coeff] : p1.terms()) phi1.add_term(exp, coeff);
  for (const auto& [exp, coeff] : p2.terms()) phi2.add_term(exp, coeff);

  SplitPair out{std::move(phi1), std::move(phi2), kInf, kInf};
  if (!u.is_zero()) {
    double m = estimate_growth(u).M;
    out.radius = 1.0 / (4.0 * m * m);
    out.radius_xprime = 1.0 / (2.0 * m);
  }
  return out;
}

bool split_uniqueness_check(const SplitPair& p, const SplitPair& q) {
  require(p.phi1.dim() == q.phi1.dim() && p.phi2.dim() == q.phi2.dim(),
          ErrorCode::dimension_mismatch,
          "split pairs live on different spaces");
  require(p.phi1.max_degree() == q.phi1.max_degree() &&
              p.phi2.max_degree() == q.phi2.max_degree(),
          ErrorCode::degree_mismatch,
          "split pairs are truncated at different degrees");
  require(p.phi1.center() == q.phi1.center(), ErrorCode::invalid_input,
          "split pairs have different centers");
  return p.phi1.terms() == q.phi1.terms() && p.phi2.terms() == q.phi2.terms();
}

}  // namespace kslift
