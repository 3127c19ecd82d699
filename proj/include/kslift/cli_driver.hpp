#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kslift/json_io.hpp"

namespace kslift {

struct CliOptions {
  int max_degree = 12;
  std::optional<double> tol;  // default depends on the subcommand
  int samples = 200;
  std::uint64_t seed = 0;
  int precision = 15;
};

struct CliResult {
  int exit_code = 0;  // 0 ok, 1 verification failed, 2 input error
  Json output;
};

/// Dispatches one subcommand on one input document. Never throws: errors
/// come back as {"error": code, "detail": text} with exit code 2.
CliResult run_command(const std::string& subcommand, const Json& input,
                      const CliOptions& options);

/// Parses the document from text first, so malformed JSON also maps onto
/// exit code 2.
CliResult run_command_text(const std::string& subcommand,
                           const std::string& input_text,
                           const CliOptions& options);

}  // namespace kslift
