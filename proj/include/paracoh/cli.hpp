#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paracoh::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // a module raised an error
inline constexpr int kUsage = 2;    // bad arguments or a missing resource

// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paracoh::cli
