#ifndef CONDMON_CLI_COMMANDS_HPP
#define CONDMON_CLI_COMMANDS_HPP

#include <ostream>

namespace condmon::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitAssertion = 1,
  kExitSpec = 2,
  kExitInput = 3,
  kExitBudget = 4,
};

/// Runs the tool with argv-style arguments. Reports go to `out`,
/// diagnostics to `err`. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace condmon::cli

#endif  // CONDMON_CLI_COMMANDS_HPP
