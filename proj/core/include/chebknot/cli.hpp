#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chebknot {

// Runs the chebknot command line on the given arguments (program name
// excluded) and returns the process exit code: 0 success, 2 invalid input,
// 3 crossing cutoff exceeded in a non-scan command, 4 internal certification
// failure. All regular output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace chebknot
