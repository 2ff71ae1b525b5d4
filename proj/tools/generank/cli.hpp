#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace generank::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { success = 0, internal_error = 1, input_error = 2 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int run(int argc, char **argv);

} // namespace generank::cli
