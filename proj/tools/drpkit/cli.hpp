#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace drpkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Invalid flag values or combinations (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the drpkit command line; returns the process exit code.
int run(int argc, const char* const* argv);

/// Same, with argv[0] supplied.
int run(const std::vector<std::string>& args);

}  // namespace drpkit::cli
