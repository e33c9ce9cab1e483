#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sepscope::cli {

enum ExitCode : int { ok = 0, input_error = 1, degenerate_only = 2, internal_error = 3 };

/// Runs the command line given without the program name. Usable in process;
/// nothing is cached between calls.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepscope::cli
