#pragma once

#include <json.hpp>

#include "kslift/harmonic.hpp"
#include "kslift/ks_transform.hpp"
#include "kslift/lift_verifier.hpp"
#include "kslift/scalar_field.hpp"
#include "kslift/splitter.hpp"

namespace kslift {

using Json = nlohmann::ordered_json;

/// Rejects documents with keys outside the allowed set; every input schema
/// is strict.
void check_fields(const Json& doc, std::initializer_list<const char*> allowed,
                  const char* what);

/// Rounds to `digits` significant decimal digits, so printed reals honor
/// the --precision option while remaining ordinary JSON numbers.
double round_sig(double value, int digits);
Json emit_real(double value, int precision);

Rational parse_rational(const Json& j);
Json emit_rational(const Rational& q);

double parse_real(const Json& j);

ExactPolynomial parse_polynomial(const Json& j);
Json emit_polynomial(const ExactPolynomial& p);

TruncatedSeries parse_series(const Json& j);
Json emit_series(const TruncatedSeries& s, int precision);

SplitPair parse_split_pair(const Json& j);
Json emit_split_pair(const SplitPair& p, int precision);

CanonicalDecomposition parse_decomposition(const Json& j);
Json emit_decomposition(const CanonicalDecomposition& d);

ScalarField parse_field(const Json& j);
Json emit_field(const ScalarField& f);

Json emit_fiber(const FiberDescription& f, int precision);

Json emit_residual_report(const ResidualReport& r, int precision);

}  // namespace kslift
