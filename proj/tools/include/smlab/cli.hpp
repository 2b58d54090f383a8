#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Entry point of the `smlab` tool. `args` excludes the program name.
/// Returns 0 on success, 2 on contract or usage errors, 3 when a resource
/// cap is hit. Results go to files under --out, or to `out` as CSV when no
/// --out is given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smlab
