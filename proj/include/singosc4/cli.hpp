#pragma once

#include <ostream>

namespace singosc4 {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitNoConvergence = 2, kExitVerifyFailed = 3 };

/// Entry point of the `singosc4` command. Artifacts go to `out` (or --output),
/// messages to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace singosc4
