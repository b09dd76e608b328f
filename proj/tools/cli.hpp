#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tsw::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kCap = 2, kInvariant = 3 };

// Runs one `tsw` invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsw::cli
