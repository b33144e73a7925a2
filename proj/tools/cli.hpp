#pragma once

#include <iosfwd>

namespace trapspace::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitMismatch = 4;

// Runs the tool with argv[0] as the program name; results go to `out`,
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trapspace::cli
