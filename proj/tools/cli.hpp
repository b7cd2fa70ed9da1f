#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace distgraph::cli {

enum ExitCode { kOk = 0, kFailure = 1, kValidation = 2, kAdmissibility = 3, kCapacity = 4 };

// args exclude the program name
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace distgraph::cli
