#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace genquad::cli {

/// Process exit codes.
enum ExitCode : int {
  ok = 0,
  usage_error = 1,
  parse_error = 2,
  precondition_violation = 3,
  contract_failure = 4,
  budget_exhausted = 5,
};

/// Runs one subcommand (args exclude the program name). Writes a single JSON
/// report to `out` and a short human summary to `diag`; returns the exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag);

}  // namespace genquad::cli
