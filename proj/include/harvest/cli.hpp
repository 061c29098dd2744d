#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace harvest {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitTruncation = 3,
  kExitIo = 4,
};

/// Runs the command line (args excludes the program name). Output goes to
/// `out`, diagnostics and errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harvest
