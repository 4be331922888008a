#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prosodex::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

/// Parses `args` (args[0] is the program name) and runs one subcommand.
/// Diagnostics and progress go to `log`; nothing is written to stdout
/// except --help output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log);

}  // namespace prosodex::cli
