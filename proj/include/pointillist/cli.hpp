#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pointillist {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the command line tool. args excludes the program name. Data goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pointillist
