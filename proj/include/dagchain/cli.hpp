#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dagchain::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

/// Entry point behind the `dagchain` executable. `args` excludes the program
/// name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dagchain::cli
