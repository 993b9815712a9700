#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sde::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRefuted = 1;  // refuted equivalence, format violation, failed precondition
inline constexpr int kUnknown = 2;  // unknown verdict, exhausted budget, non-productive system
inline constexpr int kUsage = 3;    // unreadable input, parse or usage errors

// Runs one command; args exclude the program name. Diagnostics go to err as
// a single line: error: kind=<Kind> [index=<i>] [line=<l> column=<c>] message="..."
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sde::cli
