#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gaussfermat::cli {

/// Exit codes: 0 success (including an empty verification finding),
/// 1 a verification hit, 2 usage, range or I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;
inline constexpr int kExitError = 2;

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "GAUSSFERMAT_WORKERS";

/// Runs the command line `args` (without the program name). Data goes to
/// `out`; diagnostics and progress go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussfermat::cli
