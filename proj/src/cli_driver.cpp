#include "kslift/cli_driver.hpp"

#include <cmath>

#include "kslift/rng.hpp"

namespace kslift {

namespace {

Eigen::VectorXd parse_point(const Json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw Error(ErrorCode::invalid_input,
                std::string(what) + " must be an array of length " +
                    std::to_string(dim));
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = to_double(parse_rational(j[static_cast<size_t>(i)]));
  return v;
}

Json emit_point(const Eigen::VectorXd& v, int precision) {
  Json j = Json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(emit_real(v[i], precision));
  return j;
}

TruncatedSeries truncated_to(const TruncatedSeries& s, int cap) {
  if (s.max_degree() <= cap) return s;
  TruncatedSeries out(s.dim(), cap);
  out.set_center(s.center());
  out.set_even(s.even());
  for (const auto& [exp, coeff] : s.terms().terms())
    if (exp.order() <= cap) out.add_term(exp, coeff);
  return out;
}

DerivativeMode parse_mode(const Json& input) {
  if (!input.contains("mode")) return DerivativeMode::analytic;
  std::string m = input["mode"].get<std::string>();
  if (m == "analytic") return DerivativeMode::analytic;
  if (m == "fd" || m == "finite_difference")
    return DerivativeMode::finite_difference;
  throw Error(ErrorCode::invalid_input,
              "\"mode\" must be \"analytic\" or \"fd\"");
}

Json cmd_map(const Json& input, const CliOptions& opt) {
  check_fields(input, {"y"}, "map input");
  require(input.contains("y"), ErrorCode::invalid_input, "map needs \"y\"");
  Eigen::Vector4d y(parse_point(input["y"], 4, "\"y\""));
  Json out;
  out["x"] = emit_point(ks_map(y), opt.precision);
  return out;
}

Json cmd_fiber(const Json& input, const CliOptions& opt) {
  check_fields(input, {"x"}, "fiber input");
  require(input.contains("x"), ErrorCode::invalid_input, "fiber needs \"x\"");
  Eigen::Vector3d x(parse_point(input["x"], 3, "\"x\""));
  return emit_fiber(fiber(x), opt.precision);
}

Json cmd_pullback(const Json& input, const CliOptions&) {
  ExactPolynomial f = parse_polynomial(input);
  require(f.dim() == 3, ErrorCode::dimension_mismatch,
          "pullback expects a polynomial on R^3");
  return emit_polynomial(pullback_polynomial(f));
}

Json cmd_decompose(const Json& input, const CliOptions&) {
  ExactPolynomial q = parse_polynomial(input);
  int degree = q.degree() < 0 ? 0 : q.degree();
  return emit_decomposition(
      canonical_decompose(HomogeneousPolynomial(std::move(q), degree)));
}

Json cmd_descend(const Json& input, const CliOptions&) {
  ExactPolynomial p = parse_polynomial(input);
  int degree = p.degree() < 0 ? 0 : p.degree();
  return emit_polynomial(
      hopf_descend(HomogeneousPolynomial(std::move(p), degree)).base());
}

Json cmd_split(const Json& input, const CliOptions& opt, bool many) {
  TruncatedSeries s = truncated_to(parse_series(input), opt.max_degree);
  SplitPair pair = many ? split_n_particle(s) : split_even_series(s);
  return emit_split_pair(pair, opt.precision);
}

Json cmd_growth(const Json& input, const CliOptions& opt) {
  TruncatedSeries s = parse_series(input);
  GrowthBound g = estimate_growth(s);
  RadiusReport r = growth_to_radius(g);
  Json out;
  out["C"] = emit_real(g.C, opt.precision);
  out["M"] = emit_real(g.M, opt.precision);
  out["C_tilde"] = emit_real(r.C_tilde, opt.precision);
  out["M_tilde"] = emit_real(r.M_tilde, opt.precision);
  out["radius"] = emit_real(r.radius, opt.precision);
  return out;
}

Json cmd_verify_lift(const Json& input, const CliOptions& opt,
                     int* exit_code) {
  check_fields(input,
               {"phiK", "W1", "W2", "F1", "F2", "rmin", "rmax", "mode"},
               "verify-lift input");
  for (const char* k : {"phiK", "W1", "W2", "F1", "F2"})
    require(input.contains(k), ErrorCode::invalid_input,
            std::string("verify-lift needs \"") + k + "\"");
  ScalarField phiK = parse_field(input["phiK"]);
  require(phiK.dim() == 4, ErrorCode::dimension_mismatch,
          "\"phiK\" must live on R^4");
  ScalarField w1 = parse_field(input["W1"]);
  ScalarField w2 = parse_field(input["W2"]);
  ScalarField f1 = parse_field(input["F1"]);
  ScalarField f2 = parse_field(input["F2"]);
  for (const ScalarField* f : {&w1, &w2, &f1, &f2})
    require(f->dim() == 3, ErrorCode::dimension_mismatch,
            "potentials and inhomogeneities must live on R^3");
  double rmin = input.contains("rmin") ? parse_real(input["rmin"]) : 0.1;
  double rmax = input.contains("rmax") ? parse_real(input["rmax"]) : 1.0;
  require(rmin > 0 && rmax > rmin, ErrorCode::invalid_input,
          "need 0 < rmin < rmax");
  DerivativeMode mode = parse_mode(input);
  double tol = opt.tol.value_or(default_tolerance(mode));

  Rng rng(opt.seed);
  std::vector<Eigen::Vector4d> points;
  points.reserve(static_cast<size_t>(opt.samples));
  for (int i = 0; i < opt.samples; ++i)
    points.emplace_back(rng.annulus(4, rmin, rmax));
  ResidualReport report =
      residual_one_particle(phiK, w1, w2, f1, f2, points, tol, mode);
  if (!report.pass) *exit_code = 1;
  return emit_residual_report(report, opt.precision);
}

Json cmd_verify_grusin(const Json& input, const CliOptions& opt,
                       int* exit_code) {
  check_fields(input,
               {"psi", "W", "Z", "E", "N", "xprime_center", "xprime_radius",
                "y_rmin", "y_rmax", "mode"},
               "verify-grusin input");
  require(input.contains("psi") && input.contains("Z") && input.contains("N"),
          ErrorCode::invalid_input, "verify-grusin needs \"psi\", \"Z\", \"N\"");
  LiftProblem problem;
  problem.Z = parse_real(input["Z"]);
  problem.E = input.contains("E") ? parse_real(input["E"]) : 0.0;
  problem.N = static_cast<int>(input["N"].get<std::int64_t>());
  require(problem.N >= 1, ErrorCode::invalid_input, "\"N\" must be >= 1");

  int d_tail = problem.xprime_dim();
  ScalarField psi = parse_field(input["psi"]);
  require(psi.dim() == 3 + d_tail, ErrorCode::dimension_mismatch,
          "\"psi\" must live on R^{3N}");

  if (input.contains("xprime_center")) {
    problem.xprime_center =
        parse_point(input["xprime_center"], d_tail, "\"xprime_center\"");
  } else {
    problem.xprime_center = Eigen::VectorXd::Zero(d_tail);
    for (int j = 0; j < problem.N - 1; ++j)
      problem.xprime_center[3 * j] = 2.0 * (j + 1);
  }
  double y_rmin = input.contains("y_rmin") ? parse_real(input["y_rmin"]) : 0.1;
  double y_rmax = input.contains("y_rmax") ? parse_real(input["y_rmax"]) : 1.0;
  double xp_radius = input.contains("xprime_radius")
                         ? parse_real(input["xprime_radius"])
                         : 0.5;
  require(y_rmin > 0 && y_rmax > y_rmin && xp_radius > 0,
          ErrorCode::invalid_input, "invalid sampling region");
  problem.region_y = 1.01 * y_rmax;
  problem.region_xprime = 1.01 * xp_radius;
  problem.W = input.contains("W")
                  ? parse_field(input["W"])
                  : atomic_potential(problem.Z, problem.E, problem.N);

  DerivativeMode mode = parse_mode(input);
  double tol = opt.tol.value_or(
      mode == DerivativeMode::analytic ? 1e-8 : 1e-4);

  Rng rng(opt.seed);
  double max_diff = 0;
  for (int i = 0; i < opt.samples; ++i) {
    Eigen::VectorXd w(4 + d_tail);
    w.head<4>() = rng.annulus(4, y_rmin, y_rmax);
    if (d_tail > 0)
      w.tail(d_tail) =
          problem.xprime_center + rng.annulus(d_tail, 0.0, xp_radius);
    auto [lhs, rhs] = lift_identity_check(psi, problem, w, mode);
    max_diff = std::max(max_diff, std::abs(lhs - rhs));
  }
  Json out;
  out["max_residual"] = emit_real(max_diff, opt.precision);
  out["points"] = opt.samples;
  out["tolerance"] = emit_real(tol, opt.precision);
  out["pass"] = max_diff <= tol;
  if (max_diff > tol) *exit_code = 1;
  return out;
}

Json cmd_verify_isometry(const Json& input, const CliOptions& opt,
                         int* exit_code) {
  check_fields(input, {"phi", "r", "weighted"}, "verify-isometry input");
  require(input.contains("phi") && input.contains("r"),
          ErrorCode::invalid_input, "verify-isometry needs \"phi\" and \"r\"");
  ScalarField phi = parse_field(input["phi"]);
  double r = parse_real(input["r"]);
  bool weighted =
      input.contains("weighted") && input["weighted"].get<bool>();
  double tol = opt.tol.value_or(1e-6);
  IsometryReport report = isometry_check(phi, r, tol, weighted);
  Json out;
  out["lhs"] = emit_real(report.lhs, opt.precision);
  out["rhs"] = emit_real(report.rhs, opt.precision);
  out["tolerance"] = emit_real(report.tolerance, opt.precision);
  out["pass"] = report.pass;
  if (!report.pass) *exit_code = 1;
  return out;
}

}  // namespace

CliResult run_command(const std::string& subcommand, const Json& input,
                      const CliOptions& options) {
  CliResult result;
  try {
    if (subcommand == "map") {
      result.output = cmd_map(input, options);
    } else if (subcommand == "fiber") {
      result.output = cmd_fiber(input, options);
    } else if (subcommand == "pullback") {
      result.output = cmd_pullback(input, options);
    } else if (subcommand == "decompose") {
      result.output = cmd_decompose(input, options);
    } else if (subcommand == "descend") {
      result.output = cmd_descend(input, options);
    } else if (subcommand == "split") {
      result.output = cmd_split(input, options, false);
    } else if (subcommand == "split-n") {
      result.output = cmd_split(input, options, true);
    } else if (subcommand == "growth") {
      result.output = cmd_growth(input, options);
    } else if (subcommand == "verify-lift") {
      result.output = cmd_verify_lift(input, options, &result.exit_code);
    } else if (subcommand == "verify-grusin") {
      result.output = cmd_verify_grusin(input, options, &result.exit_code);
    } else if (subcommand == "verify-isometry") {
      result.output = cmd_verify_isometry(input, options, &result.exit_code);
    } else {
      throw Error(ErrorCode::invalid_input,
                  "unknown subcommand \"" + subcommand + "\"");
    }
  } catch (const Error& e) {
    result.exit_code = 2;
    result.output = Json{{"error", e.code_name()}, {"detail", e.what()}};
  } catch (const Json::exception& e) {
    result.exit_code = 2;
    result.output =
        Json{{"error", "invalid_input"}, {"detail", e.what()}};
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.output = Json{{"error", "internal_error"}, {"detail", e.what()}};
  }
  return result;
}

CliResult run_command_text(const std::string& subcommand,
                           const std::string& input_text,
                           const CliOptions& options) {
  Json input;
  try {
    input = Json::parse(input_text.empty() ? "{}" : input_text);
  } catch (const Json::exception& e) {
    CliResult result;
    result.exit_code = 2;
    result.output = Json{{"error", "invalid_input"},
                         {"detail", std::string("malformed JSON: ") + e.what()}};
    return result;
  }
  return run_command(subcommand, input, options);
}

}  // namespace kslift
