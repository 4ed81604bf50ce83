#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lstlp::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kAssumptionViolation = 3,
  kNumericalFailure = 4,
};

/// Runs one command line (args excludes the program name). Results go to
/// out (or --out), diagnostics to err. Returns one of ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lstlp::cli
