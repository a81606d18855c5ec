#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmx {

/// Runs one CLI invocation.  `args` excludes the program name; `in` backs the
/// "-" input convention.  Returns the process exit status: 0 success,
/// 1 domain error (the error name is printed to `err`), 2 malformed input.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace pmx
