#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tetra::cli {

enum ExitCode : int {
    kSuccess = 0,
    kParseError = 2,
    kNegative = 3,
    kInconclusive = 4,
    kPrecondition = 5,
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tetra::cli
