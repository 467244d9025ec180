#pragma once

// Command-line front end. Subcommands: solve, verify, enumerate-image, count, threshold.
// Exit codes: 0 success, 2 negative answer (no witness / unsupported case), 1 usage or internal error.

#include <ostream>
#include <string>
#include <vector>

namespace wordmap::cli {

inline constexpr const char* kSchema = "wordmap/1";

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wordmap::cli
