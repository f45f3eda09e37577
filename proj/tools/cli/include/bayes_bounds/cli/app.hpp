#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bayes_bounds::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputeFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the bayes-bounds tool. args excludes the program name.
// Reads BAYES_BOUNDS_THREADS to cap worker threads (0 or unset = auto).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bayes_bounds::cli
