#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rframes {

/// Exit codes: 0 success, 1 incompatible scenario verdict, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIncompatible = 1;
inline constexpr int kExitInputError = 2;

/// Runs one `reduction-frames` invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rframes
