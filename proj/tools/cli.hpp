#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace klsum::cli {

// Runs `klsum <command> ...` with args excluding the program name. Reports go to `out` (or to files under --out),
// diagnostics to `err`. Returns 0 on pass, 1 on a failed check, 2 on a usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace klsum::cli
