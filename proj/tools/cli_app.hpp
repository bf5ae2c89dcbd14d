#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sll::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRegressionFailed = 1;
inline constexpr int kInputError = 2;
inline constexpr int kNumericalError = 3;
inline constexpr int kPreconditionError = 4;

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sll::cli
