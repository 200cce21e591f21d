#pragma once

#include <string>

#include "packclass/model.hpp"

namespace packclass::cli {

// 1000 user units per instance unit, origin at the bottom-left corner.
// Output depends only on the arguments. Throws Error(kDimensionMismatch) for
// d != 2.
std::string render_svg(const Instance& inst, const Packing& packing);

}  // namespace packclass::cli
