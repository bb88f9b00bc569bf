#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dk::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kGeneration = 3,
};

// Runs the command line `args` (args[0] is the program name). Primary
// outputs go to files or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dk::cli
