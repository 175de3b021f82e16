#pragma once

#include <iosfwd>

namespace chord {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerification = 2;

// Parses argv (argv[0] is the program name), runs one subcommand and writes
// its output to `out` (or to --output). Diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chord
