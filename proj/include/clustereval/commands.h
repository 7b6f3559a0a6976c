#pragma once

#include <ostream>

namespace clustereval {

// Process exit codes shared by all subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,            // bad flags, unreadable or malformed input
  kExitSkipped = 2,          // evaluate: questions skipped
  kExitValidationFailed = 3  // validate: at least one question failed
};

// Entry point behind the `clustereval` binary. Human-readable results go to
// `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace clustereval
