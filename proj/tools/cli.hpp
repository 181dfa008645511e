#pragma once

#include <iosfwd>

namespace liftzonoid::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kDomain = 2, kVerifyFailed = 3 };

// Parses argv, runs one subcommand, writes results to `out` (or --out) and
// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace liftzonoid::cli
