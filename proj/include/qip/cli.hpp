#pragma once

#include <iosfwd>

namespace qip {

/// Exit codes of the command-line tool.
inline constexpr int kExitFeasible = 0;
inline constexpr int kExitInfeasible = 20;
inline constexpr int kExitLimit = 30;
inline constexpr int kExitUsage = 2;

/// Subcommands: solve, oracle, bench, gen (runway|random), convert,
/// export-dep. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qip
