#ifndef AGRSIM_TOOLS_CLI_HPP
#define AGRSIM_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace agrsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `agrsim` binary. `args` includes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agrsim::cli

#endif  // AGRSIM_TOOLS_CLI_HPP
