#pragma once

#include <iosfwd>

namespace worldsys {

enum ExitCode : int {
  kExitOk = 0,
  kExitPartial = 1,  // some reproduction step or check failed
  kExitUsage = 2,
  kExitIo = 3,
  kExitParse = 4,
  kExitValidation = 5,
  kExitNumerical = 6,  // numerical failure or a simulation that aborted
};

/// Entry point of the `worldsys` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace worldsys
