#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dispersion::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // an experiment's assertion did not hold
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitBudget = 4;

/// Runs one command line. `args` excludes the program name. Point files
/// named "-" are read from `in`; results go to `out` unless --output is
/// given, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// The command line as written into output headers: the arguments with
/// --threads and --output (and their values) removed, so that runs that
/// differ only in those flags produce identical files.
std::string canonical_command(const std::vector<std::string>& args);

}  // namespace dispersion::cli
