#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thompson::cli {

// Runs one command line (without the program name). Exit codes: 0 on
// success, 1 on malformed input, 2 when a search ran out of horizon.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thompson::cli
