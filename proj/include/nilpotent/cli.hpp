#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilpotent::cli {

/// Exit codes.
inline constexpr int kYes = 0;
inline constexpr int kNo = 1;
inline constexpr int kInputError = 2;
inline constexpr int kInternalError = 3;

/// Runs one command. `args` excludes the program name; an input path of `-`
/// (the default) reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nilpotent::cli
