#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ndp {

enum ExitCode : int {
  kExitOk = 0,
  kExitRejected = 1,
  kExitParse = 2,
  kExitIo = 3,
  kExitResource = 4,
};

/// Runs the `ndp` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ndp
