#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wpe::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNoAdmissibleRoot = 2,
  kVerificationFailed = 3,
  kSolverFailed = 4,
};

inline constexpr const char* kVersion = "0.1.0";

// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wpe::cli
