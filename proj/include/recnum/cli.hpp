#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recnum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

/// Runs the recnum command line. args excludes the program name. Output that
/// is not redirected with --out goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "15..39", "39" or "15,20,39".
std::vector<unsigned long> parse_rows(const std::string& text);

}  // namespace recnum::cli
