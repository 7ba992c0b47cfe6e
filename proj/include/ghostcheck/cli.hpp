#pragma once

#include <ostream>
#include <string_view>

namespace ghostcheck {

inline constexpr std::string_view kToolName = "ghostcheck";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitSelftestFailed = 1, kExitBadInput = 2, kExitInternal = 3 };

/// Entry point of the command-line tool; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ghostcheck
