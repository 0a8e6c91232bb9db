#pragma once

#include <iosfwd>

namespace tsketch {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitBoundViolation = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Entry point of `tsketch transform|bench ...`; returns an ExitCode.
/// Reports go to `out` unless --output names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tsketch
