#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "io.hpp"

namespace packclass::cli {

enum class PieceRule { kThreeFields, kFourFields };

struct NgcutInstance {
  InstanceData data;
  std::size_t first_line = 0;  // 1-based line of the piece count
  std::vector<PieceRule> rules;  // one per piece line
};

// Layout: instance count, then per instance a piece count line, a container
// line "W1 W2", and one line per piece: "l w value" or "l w copies value"
// (the piece is repeated `copies` times). Blank lines are ignored.
// Throws Error(kParse) naming the offending line on any structure mismatch.
std::vector<NgcutInstance> parse_ngcut(std::string_view text, const std::string& source);

// e.g. "3-field pieces (length width value)", or both when mixed.
std::string describe_rules(const std::vector<PieceRule>& rules);

}  // namespace packclass::cli
