#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace lcsl {

/// Runs one CLI invocation (`args` excludes the program name) and returns
/// the process exit code: 0 success, 2 validation error, 3 numerical
/// failure, 4 I/O error. Streams are injectable for tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace lcsl
