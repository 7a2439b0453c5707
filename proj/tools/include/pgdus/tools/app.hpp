#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace pgdus::tools {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,         // library error, or an eval point that could not be evaluated
  kUsage = 2,           // bad flags
  kNotConverged = 3,    // ran to completion but a fit missed grad_tol
};

/// Runs one command line (without the program name). Normal output goes to
/// `out` unless --out redirects it; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pgdus::tools
