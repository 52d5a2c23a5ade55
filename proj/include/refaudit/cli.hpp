#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace refaudit {

// Entry point behind the `refaudit` binary. `args` excludes the program name.
// Returns 0 on success, 1 when the run finished with warnings, 2 on errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace refaudit
