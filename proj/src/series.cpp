#include "kslift/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kslift {

const double kLayerBoundR = 202.5;

void TruncatedSeries::set_center(std::vector<Rational> center) {
  require(static_cast<int>(center.size()) == dim(),
          ErrorCode::dimension_mismatch,
          "center dimension does not match series dimension");
  for (int i = 0; i < y_block_len(); ++i)
    require(center[static_cast<size_t>(i)] == 0, ErrorCode::invalid_input,
            "series must be centered at the origin in the y-block");
  center_ = std::move(center);
}

bool TruncatedSeries::even_terms_consistent() const {
  if (!even_) return true;
  for (const auto& [exp, coeff] : terms_.terms())
    if (exp.block_order(y_block_len()) % 2 != 0) return false;
  return true;
}

GrowthBound estimate_growth(const TruncatedSeries& s) {
  require(!s.is_zero(), ErrorCode::zero_series,
          "growth estimate requires a nonzero series");
  double m = 1.0;
  for (const auto& [exp, coeff] : s.terms().terms()) {
    int order = exp.order();
    if (order == 0) continue;
    double mag = std::abs(to_double(coeff));
    m = std::max(m, std::pow(mag, 1.0 / order));
  }
  double c = 0.0;
  for (const auto& [exp, coeff] : s.terms().terms()) {
    double mag = std::abs(to_double(coeff));
    c = std::max(c, mag / std::pow(m, exp.order()));
  }
  // Guard against rounding in the max: grow C by ulps until the bound
  // holds for every stored coefficient.
  auto violated = [&]() {
    for (const auto& [exp, coeff] : s.terms().terms())
      if (std::abs(to_double(coeff)) > c * std::pow(m, exp.order()))
        return true;
    return false;
  };
  while (violated()) c = std::nextafter(c, std::numeric_limits<double>::infinity());
  return {c, m};
}

RadiusReport growth_to_radius(const GrowthBound& g) {
  RadiusReport r;
  r.C_tilde = kLayerBoundR * g.C;
  r.M_tilde = 2.0 * g.M * g.M;
  r.radius = 1.0 / (4.0 * r.M_tilde);
  return r;
}

}  // namespace kslift
