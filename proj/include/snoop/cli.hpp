#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace snoop::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int { kSuccess = 0, kUsage = 2, kDataError = 3, kNumericalFailure = 4 };

/// Runs the command line `args` (without the program name), writing reports to `out` and
/// diagnostics to `err`. Returns the process exit code.
///
/// Subcommands: test-number, test-uniformity, simulate-zmin, normality, replay.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace snoop::cli
