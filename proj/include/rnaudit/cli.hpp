#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rnaudit {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Stable exit-code contract of the rn-audit binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitInfeasible = 4;

/// Runs one rn-audit invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rnaudit
