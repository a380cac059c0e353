#pragma once

// Command-line front end. Exit status: 0 success, 1 verification failure or
// enumeration overflow, 2 usage or input error.

#include <ostream>
#include <string>
#include <vector>

namespace rrsp {

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rrsp
