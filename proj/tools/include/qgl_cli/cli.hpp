#pragma once

#include <ostream>

namespace qgl::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,
  kParseError = 2,
  kUnsupported = 3,
  kUnknownDemo = 4,
};

/// Runs the qgl command line with the given streams; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgl::cli
