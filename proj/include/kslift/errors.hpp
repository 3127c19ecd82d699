#pragma once

#include <stdexcept>
#include <string>

namespace kslift {

enum class ErrorCode {
  invalid_input,
  dimension_mismatch,
  not_homogeneous,
  not_harmonic,
  not_l_annihilated,
  odd_degree,
  evenness_violation,
  zero_series,
  degree_mismatch,
  evaluation_domain,
  quadrature_budget,
  internal_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& detail) {
  if (!cond) throw Error(code, detail);
}

}  // namespace kslift
