#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs `tnnflag` with the given arguments (program name excluded). The JSON
/// report goes to `out`, diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
