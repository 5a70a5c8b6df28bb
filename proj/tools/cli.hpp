#pragma once

#include <iosfwd>

namespace modcsp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kSizeLimit = 3,
  kSelftestFailed = 4,
  kSat = 10,
  kUnsat = 20,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modcsp::cli
