#include "kslift/polynomial.hpp"

#include <sstream>

namespace kslift {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::not_homogeneous: return "not_homogeneous";
    case ErrorCode::not_harmonic: return "not_harmonic";
    case ErrorCode::not_l_annihilated: return "not_l_annihilated";
    case ErrorCode::odd_degree: return "odd_degree";
    case ErrorCode::evenness_violation: return "evenness_violation";
    case ErrorCode::zero_series: return "zero_series";
    case ErrorCode::degree_mismatch: return "degree_mismatch";
    case ErrorCode::evaluation_domain: return "evaluation_domain";
    case ErrorCode::quadrature_budget: return "quadrature_budget";
    case ErrorCode::internal_error: return "internal_error";
  }
  return "unknown";
}

std::vector<MultiIndex> multi_indices_of_order(int dim, int order) {
  require(dim >= 1, ErrorCode::invalid_input, "dimension must be positive");
  require(order >= 0, ErrorCode::invalid_input, "order must be nonnegative");
  std::vector<MultiIndex> out;
  std::vector<int> current(static_cast<size_t>(dim), 0);
  // Depth-first over exponent prefixes; emits graded-lex order within the
  // fixed total order.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == dim - 1) {
      current[static_cast<size_t>(pos)] = remaining;
      out.emplace_back(current);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      current[static_cast<size_t>(pos)] = e;
      self(self, pos + 1, remaining - e);
    }
    current[static_cast<size_t>(pos)] = 0;
  };
  rec(rec, 0, order);
  return out;
}

ExactPolynomial ExactPolynomial::norm_squared(int dim) {
  ExactPolynomial p(dim);
  for (int i = 0; i < dim; ++i)
    p.add_term(MultiIndex::unit(dim, i) + MultiIndex::unit(dim, i),
               Rational(1));
  return p;
}

void ExactPolynomial::add_term(const MultiIndex& exponents,
                               const Rational& value) {
  require(exponents.dim() == dim_, ErrorCode::dimension_mismatch,
          "multi-index dimension does not match polynomial dimension");
  if (value == 0) return;
  auto [it, inserted] = terms_.emplace(exponents, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

ExactPolynomial ExactPolynomial::operator-() const {
  ExactPolynomial out(dim_);
  for (const auto& [exp, coeff] : terms_) out.terms_.emplace(exp, -coeff);
  return out;
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& other) {
  require(other.dim_ == dim_, ErrorCode::dimension_mismatch,
          "polynomial dimensions do not match");
  for (const auto& [exp, coeff] : other.terms_) add_term(exp, coeff);
  return *this;
}

ExactPolynomial& ExactPolynomial::operator-=(const ExactPolynomial& other) {
  require(other.dim_ == dim_, ErrorCode::dimension_mismatch,
          "polynomial dimensions do not match");
  for (const auto& [exp, coeff] : other.terms_) add_term(exp, -coeff);
  return *this;
}

ExactPolynomial& ExactPolynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [exp, coeff] : terms_) coeff *= scalar;
  return *this;
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
  require(a.dim_ == b.dim_, ErrorCode::dimension_mismatch,
          "polynomial dimensions do not match");
  ExactPolynomial out(a.dim_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

std::string ExactPolynomial::to_string(
    const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [exp, coeff] : terms_) {
    Rational mag = rational_abs(coeff);
    if (first) {
      if (coeff < 0) os << "-";
      first = false;
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    std::vector<std::string> factors;
    if (mag != 1 || exp.order() == 0) factors.push_back(mag.str());
    for (int i = 0; i < dim_; ++i) {
      if (exp[i] == 0) continue;
      std::string v = static_cast<size_t>(i) < names.size()
                          ? names[static_cast<size_t>(i)]
                          : "x" + std::to_string(i + 1);
      if (exp[i] > 1) v += "^" + std::to_string(exp[i]);
      factors.push_back(std::move(v));
    }
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) os << "*";
      os << factors[i];
    }
  }
  return os.str();
}

ExactPolynomial derivative(const ExactPolynomial& p, int var) {
  require(var >= 0 && var < p.dim(), ErrorCode::invalid_input,
          "derivative variable out of range");
  ExactPolynomial out(p.dim());
  for (const auto& [exp, coeff] : p.terms()) {
    int e = exp[var];
    if (e == 0) continue;
    out.add_term(exp.with(var, e - 1), coeff * e);
  }
  return out;
}

ExactPolynomial block_laplacian(const ExactPolynomial& p, int start, int len) {
  require(start >= 0 && len >= 0 && start + len <= p.dim(),
          ErrorCode::invalid_input, "block out of range");
  ExactPolynomial out(p.dim());
  for (const auto& [exp, coeff] : p.terms()) {
    for (int i = start; i < start + len; ++i) {
      int e = exp[i];
      if (e < 2) continue;
      out.add_term(exp.with(i, e - 2), coeff * e * (e - 1));
    }
  }
  return out;
}

ExactPolynomial laplacian(const ExactPolynomial& p) {
  return block_laplacian(p, 0, p.dim());
}

ExactPolynomial apply_L(const ExactPolynomial& p) {
  require(p.dim() == 4, ErrorCode::dimension_mismatch,
          "the operator L acts on polynomials in four variables");
  ExactPolynomial out(4);
  // L = y1 d4 - y4 d1 + y3 d2 - y2 d3
  constexpr int mult[4] = {0, 2, 1, 3};   // variable multiplying each d-term
  constexpr int diff[4] = {3, 1, 2, 0};   // variable being differentiated
  constexpr int sign[4] = {+1, +1, -1, -1};
  for (const auto& [exp, coeff] : p.terms()) {
    for (int t = 0; t < 4; ++t) {
      int e = exp[diff[t]];
      if (e == 0) continue;
      MultiIndex shifted = exp.with(diff[t], e - 1);
      shifted = shifted.with(mult[t], shifted[mult[t]] + 1);
      out.add_term(shifted, coeff * e * sign[t]);
    }
  }
  return out;
}

ExactPolynomial pow(const ExactPolynomial& p, int exponent) {
  require(exponent >= 0, ErrorCode::invalid_input,
          "polynomial exponent must be nonnegative");
  ExactPolynomial acc = ExactPolynomial::constant(p.dim(), Rational(1));
  ExactPolynomial base = p;
  int e = exponent;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

std::vector<HomogeneousPolynomial> homogeneous_components(
    const ExactPolynomial& p) {
  std::vector<HomogeneousPolynomial> out;
  // The term map is graded, so equal-degree terms are contiguous.
  auto it = p.terms().begin();
  while (it != p.terms().end()) {
    int deg = it->first.order();
    ExactPolynomial layer(p.dim());
    while (it != p.terms().end() && it->first.order() == deg) {
      layer.add_term(it->first, it->second);
      ++it;
    }
    out.emplace_back(std::move(layer), deg);
  }
  return out;
}

Integer count_multi_indices(int k, int l) {
  require(k >= 1, ErrorCode::invalid_input,
          "multi-index dimension must be at least 1");
  require(l >= 0, ErrorCode::invalid_input, "order must be nonnegative");
  // C(k + l - 1, k - 1), computed incrementally so every partial value is an
  // exact integer.
  Integer result(1);
  for (int i = 1; i <= k - 1; ++i) {
    result *= (l + i);
    result /= i;
  }
  return result;
}

}  // namespace kslift
