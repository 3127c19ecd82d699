#include "kslift/json_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <set>

namespace kslift {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void bad_input(const std::string& detail) {
  throw Error(ErrorCode::invalid_input, detail);
}

std::int64_t to_int64(const Integer& v, const char* what) {
  static const Integer lo = std::numeric_limits<std::int64_t>::min();
  static const Integer hi = std::numeric_limits<std::int64_t>::max();
  if (v < lo || v > hi)
    bad_input(std::string(what) + " exceeds the JSON integer range");
  return v.convert_to<std::int64_t>();
}

int parse_nonneg_int(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    bad_input(std::string(what) + " must be a nonnegative integer");
  return static_cast<int>(j.get<std::int64_t>());
}

// Exact rational value of a decimal string like "-1.25" or "3e-2".
Rational parse_decimal_string(const std::string& s) {
  size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    negative = s[pos] == '-';
    ++pos;
  }
  Integer mantissa = 0;
  long frac_digits = 0;
  bool any_digit = false;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    mantissa = mantissa * 10 + (s[pos] - '0');
    ++pos;
    any_digit = true;
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      mantissa = mantissa * 10 + (s[pos] - '0');
      ++frac_digits;
      ++pos;
      any_digit = true;
    }
  }
  long exponent = 0;
  if (any_digit && pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      exp_negative = s[pos] == '-';
      ++pos;
    }
    bool exp_digit = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      exponent = exponent * 10 + (s[pos] - '0');
      ++pos;
      exp_digit = true;
    }
    if (!exp_digit) bad_input("malformed exponent in decimal \"" + s + "\"");
    if (exp_negative) exponent = -exponent;
  }
  if (!any_digit || pos != s.size())
    bad_input("cannot parse decimal string \"" + s + "\"");
  Integer scale = 1;
  for (long i = 0; i < std::labs(exponent - frac_digits); ++i) scale *= 10;
  Rational q(mantissa);
  if (exponent - frac_digits >= 0)
    q *= scale;
  else
    q /= scale;
  return negative ? -q : q;
}

MultiIndex parse_exponents(const Json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    bad_input("\"exp\" must be an array of length dim");
  std::vector<int> e;
  e.reserve(j.size());
  for (const auto& v : j) e.push_back(parse_nonneg_int(v, "exponent"));
  return MultiIndex(std::move(e));
}

}  // namespace

void check_fields(const Json& doc, std::initializer_list<const char*> allowed,
                  const char* what) {
  if (!doc.is_object())
    bad_input(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok)
      bad_input("unknown field \"" + key + "\" in " + what);
  }
}

double round_sig(double value, int digits) {
  if (!std::isfinite(value)) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

Json emit_real(double value, int precision) {
  return Json(round_sig(value, precision));
}

Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) bad_input("rational value must be finite");
    // Binary doubles are exact rationals.
    Rational q(v);
    return q;
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find('/') != std::string::npos) {
      try {
        return Rational(s);
      } catch (const std::exception&) {
        bad_input("cannot parse rational string \"" + s + "\"");
      }
    }
    return parse_decimal_string(s);
  }
  if (j.is_object()) {
    check_fields(j, {"num", "den"}, "rational");
    if (!j.contains("num") || !j["num"].is_number_integer())
      bad_input("rational object needs an integer \"num\"");
    Integer num(j["num"].get<std::int64_t>());
    Integer den(1);
    if (j.contains("den")) {
      if (!j["den"].is_number_integer() || j["den"].get<std::int64_t>() <= 0)
        bad_input("\"den\" must be a positive integer");
      den = j["den"].get<std::int64_t>();
    }
    return Rational(num, den);
  }
  bad_input("expected a rational (integer, number, string, or {num, den})");
}

Json emit_rational(const Rational& q) {
  Json j;
  j["num"] = to_int64(numerator(q), "numerator");
  j["den"] = to_int64(denominator(q), "denominator");
  return j;
}

double parse_real(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return std::strtod(j.get<std::string>().c_str(), nullptr);
  bad_input("expected a real number");
}

ExactPolynomial parse_polynomial(const Json& j) {
  check_fields(j, {"dim", "terms"}, "polynomial");
  if (!j.contains("dim") || !j.contains("terms"))
    bad_input("polynomial needs \"dim\" and \"terms\"");
  int dim = parse_nonneg_int(j["dim"], "dim");
  if (dim < 1) bad_input("polynomial dimension must be positive");
  if (!j["terms"].is_array()) bad_input("\"terms\" must be an array");
  ExactPolynomial p(dim);
  std::set<MultiIndex> seen;
  for (const auto& term : j["terms"]) {
    check_fields(term, {"exp", "num", "den"}, "polynomial term");
    if (!term.contains("exp") || !term.contains("num"))
      bad_input("polynomial term needs \"exp\" and \"num\"");
    MultiIndex exp = parse_exponents(term["exp"], dim);
    if (!seen.insert(exp).second)
      bad_input("duplicate exponent vector in polynomial");
    if (!term["num"].is_number_integer())
      bad_input("\"num\" must be an integer");
    Integer num(term["num"].get<std::int64_t>());
    if (num == 0) bad_input("zero numerators are not stored");
    Integer den(1);
    if (term.contains("den")) {
      if (!term["den"].is_number_integer() ||
          term["den"].get<std::int64_t>() <= 0)
        bad_input("\"den\" must be a positive integer");
      den = term["den"].get<std::int64_t>();
    }
    p.add_term(exp, Rational(num, den));
  }
  return p;
}

Json emit_polynomial(const ExactPolynomial& p) {
  Json j;
  j["dim"] = p.dim();
  Json terms = Json::array();
  for (const auto& [exp, coeff] : p.terms()) {
    Json t;
    t["exp"] = exp.exponents();
    t["num"] = to_int64(numerator(coeff), "coefficient numerator");
    t["den"] = to_int64(denominator(coeff), "coefficient denominator");
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

TruncatedSeries parse_series(const Json& j) {
  check_fields(j, {"dim", "max_degree", "center", "even", "terms", "growth"},
               "series");
  if (!j.contains("dim") || !j.contains("max_degree") || !j.contains("terms"))
    bad_input("series needs \"dim\", \"max_degree\" and \"terms\"");
  int dim = parse_nonneg_int(j["dim"], "dim");
  if (dim < 1) bad_input("series dimension must be positive");
  TruncatedSeries s(dim, parse_nonneg_int(j["max_degree"], "max_degree"));
  if (j.contains("center")) {
    if (!j["center"].is_array() || static_cast<int>(j["center"].size()) != dim)
      bad_input("\"center\" must be an array of length dim");
    std::vector<Rational> center;
    for (const auto& c : j["center"]) center.push_back(parse_rational(c));
    s.set_center(std::move(center));
  }
  if (j.contains("even")) {
    if (!j["even"].is_boolean()) bad_input("\"even\" must be a boolean");
    s.set_even(j["even"].get<bool>());
  }
  if (!j["terms"].is_array()) bad_input("\"terms\" must be an array");
  std::set<MultiIndex> seen;
  for (const auto& term : j["terms"]) {
    check_fields(term, {"exp", "num", "den"}, "series term");
    if (!term.contains("exp") || !term.contains("num"))
      bad_input("series term needs \"exp\" and \"num\"");
    MultiIndex exp = parse_exponents(term["exp"], dim);
    if (!seen.insert(exp).second)
      bad_input("duplicate exponent vector in series");
    if (!term["num"].is_number_integer())
      bad_input("\"num\" must be an integer");
    Integer num(term["num"].get<std::int64_t>());
    if (num == 0) bad_input("zero numerators are not stored");
    Integer den(1);
    if (term.contains("den")) {
      if (!term["den"].is_number_integer() ||
          term["den"].get<std::int64_t>() <= 0)
        bad_input("\"den\" must be a positive integer");
      den = term["den"].get<std::int64_t>();
    }
    if (exp.order() > s.max_degree())
      bad_input("series term order exceeds max_degree");
    s.add_term(exp, Rational(num, den));
  }
  require(s.even_terms_consistent(), ErrorCode::evenness_violation,
          "series is flagged even but contains odd y-block terms");
  if (j.contains("growth")) {
    check_fields(j["growth"], {"C", "M"}, "growth");
    if (!j["growth"].contains("C") || !j["growth"].contains("M"))
      bad_input("growth needs \"C\" and \"M\"");
    GrowthBound g;
    g.C = parse_real(j["growth"]["C"]);
    g.M = parse_real(j["growth"]["M"]);
    if (g.C <= 0 || g.M <= 0) bad_input("growth constants must be positive");
    s.set_growth(g);
  }
  return s;
}

Json emit_series(const TruncatedSeries& s, int precision) {
  Json j;
  j["dim"] = s.dim();
  j["max_degree"] = s.max_degree();
  Json center = Json::array();
  for (const auto& c : s.center()) center.push_back(emit_rational(c));
  j["center"] = std::move(center);
  j["even"] = s.even();
  Json terms = Json::array();
  for (const auto& [exp, coeff] : s.terms().terms()) {
    Json t;
    t["exp"] = exp.exponents();
    t["num"] = to_int64(numerator(coeff), "coefficient numerator");
    t["den"] = to_int64(denominator(coeff), "coefficient denominator");
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  if (s.growth()) {
    Json g;
    g["C"] = emit_real(s.growth()->C, precision);
    g["M"] = emit_real(s.growth()->M, precision);
    j["growth"] = std::move(g);
  }
  return j;
}

SplitPair parse_split_pair(const Json& j) {
  check_fields(j, {"phi1", "phi2", "radius", "radius_xprime"}, "split pair");
  if (!j.contains("phi1") || !j.contains("phi2"))
    bad_input("split pair needs \"phi1\" and \"phi2\"");
  SplitPair p{parse_series(j["phi1"]), parse_series(j["phi2"]), kInf,
              std::nullopt};
  if (j.contains("radius")) {
    if (j["radius"].is_string()) {
      if (j["radius"].get<std::string>() != "unbounded")
        bad_input("\"radius\" must be a number or \"unbounded\"");
    } else {
      p.radius = parse_real(j["radius"]);
    }
  }
  if (j.contains("radius_xprime") && !j["radius_xprime"].is_null()) {
    if (j["radius_xprime"].is_string()) {
      if (j["radius_xprime"].get<std::string>() != "unbounded")
        bad_input("\"radius_xprime\" must be a number, null, or \"unbounded\"");
      p.radius_xprime = kInf;
    } else {
      p.radius_xprime = parse_real(j["radius_xprime"]);
    }
  }
  return p;
}

Json emit_split_pair(const SplitPair& p, int precision) {
  Json j;
  j["phi1"] = emit_series(p.phi1, precision);
  j["phi2"] = emit_series(p.phi2, precision);
  if (std::isinf(p.radius))
    j["radius"] = "unbounded";
  else
    j["radius"] = emit_real(p.radius, precision);
  if (!p.radius_xprime)
    j["radius_xprime"] = nullptr;
  else if (std::isinf(*p.radius_xprime))
    j["radius_xprime"] = "unbounded";
  else
    j["radius_xprime"] = emit_real(*p.radius_xprime, precision);
  return j;
}

CanonicalDecomposition parse_decomposition(const Json& j) {
  check_fields(j, {"dim", "degree", "layers"}, "decomposition");
  if (!j.contains("dim") || !j.contains("degree") || !j.contains("layers"))
    bad_input("decomposition needs \"dim\", \"degree\" and \"layers\"");
  CanonicalDecomposition d;
  d.dim = parse_nonneg_int(j["dim"], "dim");
  d.degree = parse_nonneg_int(j["degree"], "degree");
  if (!j["layers"].is_array()) bad_input("\"layers\" must be an array");
  for (const auto& layer : j["layers"]) {
    check_fields(layer, {"j", "H"}, "decomposition layer");
    if (!layer.contains("j") || !layer.contains("H"))
      bad_input("layer needs \"j\" and \"H\"");
    int jj = parse_nonneg_int(layer["j"], "j");
    ExactPolynomial h = parse_polynomial(layer["H"]);
    d.layers.emplace_back(jj,
                          HomogeneousPolynomial(std::move(h), d.degree - 2 * jj));
  }
  return d;
}

Json emit_decomposition(const CanonicalDecomposition& d) {
  Json j;
  j["dim"] = d.dim;
  j["degree"] = d.degree;
  Json layers = Json::array();
  for (const auto& [jj, h] : d.layers) {
    Json layer;
    layer["j"] = jj;
    layer["H"] = emit_polynomial(h.base());
    layers.push_back(std::move(layer));
  }
  j["layers"] = std::move(layers);
  return j;
}

namespace {

ScalarField parse_field_node(const Json& j, int dim) {
  if (!j.is_object() || !j.contains("op"))
    bad_input("field node must be an object with an \"op\"");
  std::string op = j["op"].get<std::string>();
  if (op == "const") {
    check_fields(j, {"op", "value"}, "const node");
    if (!j.contains("value")) bad_input("const node needs \"value\"");
    return ScalarField::constant(dim, parse_real(j["value"]));
  }
  if (op == "poly") {
    check_fields(j, {"op", "poly"}, "poly node");
    if (!j.contains("poly")) bad_input("poly node needs \"poly\"");
    ExactPolynomial p = parse_polynomial(j["poly"]);
    if (p.dim() != dim)
      bad_input("poly node dimension does not match the field dimension");
    return ScalarField::poly(std::move(p));
  }
  if (op == "norm") {
    check_fields(j, {"op", "start", "len", "diff"}, "norm node");
    int len = j.contains("len") ? parse_nonneg_int(j["len"], "len") : dim;
    if (j.contains("diff")) {
      if (!j["diff"].is_array() || j["diff"].size() != 2)
        bad_input("\"diff\" must be [start_a, start_b]");
      int a = parse_nonneg_int(j["diff"][0], "diff start");
      int b = parse_nonneg_int(j["diff"][1], "diff start");
      return ScalarField::norm_diff(dim, a, b, len);
    }
    int start = j.contains("start") ? parse_nonneg_int(j["start"], "start") : 0;
    return ScalarField::norm(dim, start, len);
  }
  if (op == "pow") {
    check_fields(j, {"op", "base", "exponent"}, "pow node");
    if (!j.contains("base") || !j.contains("exponent"))
      bad_input("pow node needs \"base\" and \"exponent\"");
    return ScalarField::pow(parse_field_node(j["base"], dim),
                            parse_real(j["exponent"]));
  }
  if (op == "exp") {
    check_fields(j, {"op", "arg"}, "exp node");
    if (!j.contains("arg")) bad_input("exp node needs \"arg\"");
    return ScalarField::exp(parse_field_node(j["arg"], dim));
  }
  if (op == "add" || op == "mul") {
    const char* key = op == "add" ? "terms" : "factors";
    check_fields(j, {"op", "terms", "factors"}, "add/mul node");
    if (!j.contains(key) || !j[key].is_array() || j[key].empty())
      bad_input(std::string("\"") + key + "\" must be a nonempty array");
    std::vector<ScalarField> children;
    for (const auto& c : j[key]) children.push_back(parse_field_node(c, dim));
    return op == "add" ? ScalarField::sum(std::move(children))
                       : ScalarField::product(std::move(children));
  }
  bad_input("unknown field op \"" + op + "\"");
}

Json emit_field_node(const ScalarField::NodePtr& n) {
  Json j;
  switch (n->op) {
    case ScalarField::Op::constant:
      j["op"] = "const";
      j["value"] = n->scalar;
      break;
    case ScalarField::Op::poly:
      j["op"] = "poly";
      j["poly"] = emit_polynomial(*n->poly);
      break;
    case ScalarField::Op::norm:
      j["op"] = "norm";
      if (n->diff_start >= 0) {
        j["diff"] = Json::array({n->start, n->diff_start});
      } else {
        j["start"] = n->start;
      }
      j["len"] = n->len;
      break;
    case ScalarField::Op::pow:
      j["op"] = "pow";
      j["base"] = emit_field_node(n->children[0]);
      j["exponent"] = n->scalar;
      break;
    case ScalarField::Op::exp:
      j["op"] = "exp";
      j["arg"] = emit_field_node(n->children[0]);
      break;
    case ScalarField::Op::add: {
      j["op"] = "add";
      Json terms = Json::array();
      for (const auto& c : n->children) terms.push_back(emit_field_node(c));
      j["terms"] = std::move(terms);
      break;
    }
    case ScalarField::Op::mul: {
      j["op"] = "mul";
      Json factors = Json::array();
      for (const auto& c : n->children) factors.push_back(emit_field_node(c));
      j["factors"] = std::move(factors);
      break;
    }
  }
  return j;
}

}  // namespace

ScalarField parse_field(const Json& j) {
  check_fields(j, {"dim", "expr"}, "scalar field");
  if (!j.contains("dim") || !j.contains("expr"))
    bad_input("scalar field needs \"dim\" and \"expr\"");
  int dim = parse_nonneg_int(j["dim"], "dim");
  if (dim < 1) bad_input("field dimension must be positive");
  return parse_field_node(j["expr"], dim);
}

Json emit_field(const ScalarField& f) {
  Json j;
  j["dim"] = f.dim();
  j["expr"] = emit_field_node(f.node());
  return j;
}

Json emit_fiber(const FiberDescription& f, int precision) {
  Json j;
  j["r1"] = emit_real(f.r1, precision);
  j["r2"] = emit_real(f.r2, precision);
  if (f.phase) j["phase"] = emit_real(*f.phase, precision);
  if (f.axis == FiberDescription::Axis::plus) j["axis"] = "plus";
  if (f.axis == FiberDescription::Axis::minus) j["axis"] = "minus";
  j["is_point"] = f.is_point;
  j["center_radius"] = emit_real(f.center_radius, precision);
  return j;
}

Json emit_residual_report(const ResidualReport& r, int precision) {
  Json j;
  j["max_residual"] = emit_real(r.max_residual, precision);
  j["points"] = r.points;
  j["tolerance"] = emit_real(r.tolerance, precision);
  j["pass"] = r.pass;
  return j;
}

}  // namespace kslift
