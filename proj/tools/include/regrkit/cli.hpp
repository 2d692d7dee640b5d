#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regrkit {

/// Exit codes returned by run_cli.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumerical = 3,
};

/// Runs one command line. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regrkit
