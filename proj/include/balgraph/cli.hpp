#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace balgraph::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kVerifyFailed = 2,
  kBudgetExceeded = 3,
};

/// Runs one command line (without the program name). All output goes to
/// `out` and diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace balgraph::cli
