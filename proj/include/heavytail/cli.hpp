#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace heavytail::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. Results go to `out`
// (or the --output file); failures print a single diagnostic line to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace heavytail::cli
