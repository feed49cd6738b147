#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace finadd {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitUndetermined = 2,
    kExitIncoherent = 3,
};

// args excludes the program name. Result documents go to `out`,
// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace finadd
