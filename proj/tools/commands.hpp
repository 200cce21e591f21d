#pragma once

#include <ostream>

namespace packclass::cli {

inline constexpr int kExitFeasible = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitResourceLimit = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

// Entry point of the `packclass` tool. ResultFiles and reports go to `out`
// unless an output path is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace packclass::cli
