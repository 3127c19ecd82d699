#pragma once

#include <compare>
#include <numeric>
#include <vector>

#include "kslift/errors.hpp"

namespace kslift {

/// Exponent vector of a monomial, one entry per variable.
class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<int> exponents)
      : exponents_(std::move(exponents)) {
    for (int e : exponents_)
      require(e >= 0, ErrorCode::invalid_input,
              "multi-index exponents must be nonnegative");
  }

  static MultiIndex zero(int dim) {
    return MultiIndex(std::vector<int>(static_cast<size_t>(dim), 0));
  }

  static MultiIndex unit(int dim, int var) {
    std::vector<int> e(static_cast<size_t>(dim), 0);
    e[static_cast<size_t>(var)] = 1;
    return MultiIndex(std::move(e));
  }

  int dim() const { return static_cast<int>(exponents_.size()); }

  int order() const {
    return std::accumulate(exponents_.begin(), exponents_.end(), 0);
  }

  /// Sum of the exponents of the first `len` variables.
  int block_order(int len) const {
    int s = 0;
    for (int i = 0; i < len && i < dim(); ++i) s += exponents_[i];
    return s;
  }

  int operator[](int i) const { return exponents_[static_cast<size_t>(i)]; }

  const std::vector<int>& exponents() const { return exponents_; }

  MultiIndex with(int var, int value) const {
    std::vector<int> e = exponents_;
    e[static_cast<size_t>(var)] = value;
    return MultiIndex(std::move(e));
  }

  MultiIndex operator+(const MultiIndex& other) const {
    require(other.dim() == dim(), ErrorCode::dimension_mismatch,
            "multi-index dimensions do not match");
    std::vector<int> e = exponents_;
    for (size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
    return MultiIndex(std::move(e));
  }

  bool operator==(const MultiIndex& other) const = default;

  // Graded lexicographic order; keeps term maps sorted by total degree,
  // which in turn keeps serialized output deterministic.
  std::strong_ordering operator<=>(const MultiIndex& other) const {
    if (auto c = order() <=> other.order(); c != 0) return c;
    return exponents_ <=> other.exponents_;
  }

 private:
  std::vector<int> exponents_;
};

/// All multi-indices of the given dimension and exact order, in graded-lex
/// order.
std::vector<MultiIndex> multi_indices_of_order(int dim, int order);

}  // namespace kslift
