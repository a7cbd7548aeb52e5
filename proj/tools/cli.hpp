#pragma once

#include <ostream>
#include <span>
#include <string>

namespace rumorsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;

/// Entry point shared by the `rumorsim` binary and the tests. `args` excludes
/// the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rumorsim::cli
