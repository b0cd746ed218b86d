#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mvs::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kInvalid = 3,
};

/// Runs one `mvstereo` invocation. `args` excludes the program name.
/// Failures print a single JSON object line to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvs::cli
