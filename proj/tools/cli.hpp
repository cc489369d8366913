#ifndef QWALK_TOOLS_CLI_HPP
#define QWALK_TOOLS_CLI_HPP

#include <iosfwd>

namespace qwalk::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIrreversible = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudgetExhausted = 3;

//! Runs the qwalk command line, writing results to `out` and diagnostics to
//! `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli

#endif  // QWALK_TOOLS_CLI_HPP
