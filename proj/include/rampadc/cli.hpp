#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace rampadc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotFound = 2;

/// Entry point shared by the `rampadc` binary and the tests. `args` excludes
/// the program name. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Fixed-point rendering with 12 significant digits ("0" for zero).
std::string format_sig12(double value);

}  // namespace rampadc::cli
