#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prefdist {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInfeasibleBase = 3;
inline constexpr int kExitEmptyPolytope = 4;
inline constexpr int kExitTooFewSubjects = 5;

/// Runs the `prefdist` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prefdist
