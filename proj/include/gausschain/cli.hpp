#pragma once

#include <iostream>

namespace gausschain {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitIo = 3 };

/// Entry point of the gausschain command line tool. Data goes to `out`,
/// diagnostics and summaries to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace gausschain
