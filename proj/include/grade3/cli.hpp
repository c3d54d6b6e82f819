#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grade3::cli {

enum ExitCode : int { Success = 0, Negative = 1, Undetermined = 2, InvalidInput = 3 };

// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grade3::cli
