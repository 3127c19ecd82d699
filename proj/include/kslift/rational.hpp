#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace kslift {

// All algebraic identities are checked exactly, so coefficients are
// arbitrary-precision rationals throughout.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rational_abs(const Rational& q) { return q < 0 ? -q : q; }

inline Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational acc(1);
  Rational b = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

inline std::string to_string(const Rational& q) {
  return q.str();
}

}  // namespace kslift
