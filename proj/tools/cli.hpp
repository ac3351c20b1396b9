#pragma once

#include <iosfwd>

namespace layercache::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line. Normal output goes to `out`, diagnostics to `err`;
// `in` backs the "-" file name.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace layercache::cli
