#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace foldfem::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kNumericalError = 2,
  kBubbleCheckFailed = 3,
};

/// Parses flags, runs the requested study and writes its artifacts.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// argv[0] is supplied by the caller (any string).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foldfem::cli
