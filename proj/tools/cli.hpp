#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// Runs one `ctl` invocation; args excludes the program name. Reports go to
/// `out` unless --out names a file; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctl::cli
