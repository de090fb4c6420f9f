#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bandapprox {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConstruction = 1,
  kExitVerification = 2,
  kExitNoFamily = 3,
  kExitUsage = 64,
  kExitData = 65,
  kExitNoInput = 66,
};

// Runs the tool on args (without the program name). Output files go where
// --out says, otherwise to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bandapprox
