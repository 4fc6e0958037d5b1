#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moyal::cli {

// Runs one command. args excludes the program name. Exit codes: 0 success,
// 1 usage or parse errors (message on err), 2 verification failure (report
// with the first counterexample on out).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace moyal::cli
