#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tariffot {

/// Exit codes shared by every subcommand.
enum ExitCode {
  kExitOk = 0,
  kExitInfeasible = 2,
  kExitNoArbitrage = 3,
  kExitParseError = 4,
  kExitInternalError = 5,
};

/// Dispatches the tariffot subcommands (cost, solve, eulerian, hjb,
/// example1d, render). argv excludes the program name. Returns an ExitCode;
/// never throws.
int run_cli(const std::vector<std::string>& argv, std::ostream& out,
            std::ostream& err);

}  // namespace tariffot
