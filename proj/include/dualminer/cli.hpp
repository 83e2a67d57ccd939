#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dualminer::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// Parameter grid for `sweep`: ascending values in [0, 1], both lists non-empty.
struct SweepGrid {
    std::vector<double> sup_values;
    std::vector<double> ratio_values;
};

/// Parses `0,0.1,0.2`. Throws std::invalid_argument when a value is not a
/// number, lies outside [0, 1], or the list is empty or not ascending.
std::vector<double> parse_grid_values(std::string_view text);

/// Runs `dualminer <args...>` (args exclude the program name).
/// Subcommands: split, discover, evaluate, sweep.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualminer::cli
