#pragma once

#include <ostream>
#include <span>
#include <string>

namespace causa::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kInvalid = 1,     // system fails validation
    kUsage = 2,       // parse, schema or usage error
    kNoCause = 3,     // analysis found no causal set
    kNotAnError = 4,  // trace satisfies the global specification
};

/// Runs the tool on `args` (without the program name), writing reports to
/// `out` and diagnostics to `err`. Returns the exit status.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace causa::cli
