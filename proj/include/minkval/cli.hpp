#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace minkval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitModelViolation = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataFormat = 65;
inline constexpr int kExitInternal = 70;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minkval::cli
