#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sfcdf::cli {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_bad_flags = 2;
inline constexpr int exit_bad_combination = 3;
inline constexpr int exit_io_error = 4;
inline constexpr int exit_not_converged = 5;

/// Runs the command line tool (subcommands: eval, simulate, oracle, bench).
/// `args` excludes the program name. Data goes to `out` or the --out file;
/// progress and diagnostics go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sfcdf::cli
