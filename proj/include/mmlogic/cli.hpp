#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mmlogic {

/// Runs one command line (args[0] is the program name). Returns 0 on a
/// positive verdict, 1 on a negative one, 2 on errors and timeouts.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmlogic
