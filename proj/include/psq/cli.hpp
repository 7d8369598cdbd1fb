#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psq::cli {

/// Exit codes: 0 success, 1 usage/parse/library error, 2 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailed = 2;

/// Runs one psq invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psq::cli
