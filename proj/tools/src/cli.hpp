#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // validation and domain errors
inline constexpr int kExitInput = 2;   // usage, I/O and parse errors

/// Runs the `lfd` command line (`args` excludes the program name). Data goes
/// to `out` or to files, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfd::cli
