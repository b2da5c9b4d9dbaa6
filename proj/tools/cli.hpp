#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dynslice::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kRuntime = 3,
  kCriterion = 4,
  kMismatch = 5,
};

struct Terminal {
  bool color = false;  // dim unsliced labels with ANSI escapes
};

/// Entry point of the `dynslice` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            Terminal term = {});

}  // namespace dynslice::cli
