#pragma once

#include <iosfwd>

namespace clausedag::cli {

// Exit codes. solve and oracle use the DIMACS solver convention.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDisagree = 2;
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;

// Entry point behind the clausedag executable: machine output on out,
// diagnostics on err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace clausedag::cli
