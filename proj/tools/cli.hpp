#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nomamec::cli {

// Stable across versions.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitBadInput = 64;

// Relative solver-vs-oracle gap above which `compare` fails.
inline constexpr double kCompareTolerance = 1e-3;

// Environment variable that redirects relative output paths.
inline constexpr const char* kOutDirEnv = "NOMAMEC_OUT_DIR";

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nomamec::cli
