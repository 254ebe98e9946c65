#pragma once

#include <iosfwd>

namespace airyflow::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one command line. Reports go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace airyflow::cli
