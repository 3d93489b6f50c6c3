#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ratiolim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUnavailable = 2;
inline constexpr int kExitViolation = 3;

/// Runs one command line (without the program name).  Documents go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default OEIS cache directory: $RATIOLIM_CACHE_DIR, else the XDG cache dir.
std::string default_cache_dir();

}  // namespace ratiolim::cli
