#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace braidwalk::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kResource = 3, kInvariant = 4 };

// Runs one subcommand. `args` excludes the program name. Reports go to
// `out` (or to the --output file), diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace braidwalk::cli
