#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infoid::cli {

inline constexpr int kExitOk = 0;         // success or Identical
inline constexpr int kExitDifferent = 1;
inline constexpr int kExitUndefined = 2;
inline constexpr int kExitUsage = 3;      // usage or input error

// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infoid::cli
