#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvelab::cli {

enum ExitCode : int { Success = 0, NotEquivalent = 1, BadInput = 2, InternalFailure = 3 };

// Runs one curvelab invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvelab::cli
