#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "kslift/cli_driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Kustaanheimo-Stiefel transform toolkit: fiber geometry, "
               "harmonic decomposition, Hopf descent, even-series splitting "
               "and lifted-equation verification. Reads one JSON document "
               "on stdin, writes one JSON document on stdout."};
  app.require_subcommand(1);

  kslift::CliOptions options;
  double tol = -1;
  app.add_option("--max-degree", options.max_degree,
                 "Degree cap for series processing")
      ->capture_default_str();
  app.add_option("--tol", tol, "Verification tolerance (default per command)");
  app.add_option("--samples", options.samples, "Sample point count")
      ->capture_default_str();
  app.add_option("--seed", options.seed, "Seed for deterministic sampling")
      ->capture_default_str();
  app.add_option("--precision", options.precision,
                 "Significant digits for printed reals")
      ->capture_default_str();

  for (const char* name :
       {"map", "fiber", "pullback", "decompose", "descend", "split", "split-n",
        "growth", "verify-lift", "verify-grusin", "verify-isometry"})
    app.add_subcommand(name)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (tol > 0) options.tol = tol;

  std::ostringstream in;
  in << std::cin.rdbuf();
  kslift::CliResult result = kslift::run_command_text(
      app.get_subcommands().front()->get_name(), in.str(), options);
  std::cout << result.output.dump(2) << "\n";
  return result.exit_code;
}
