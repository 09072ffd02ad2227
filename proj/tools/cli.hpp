#pragma once

#include <iosfwd>

namespace binzeros::cli {

enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kNumerical = 3,
};

/// Runs one `binzeros` command line. Reports go to --out (atomically) or to
/// `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace binzeros::cli
