#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "packclass/model.hpp"
#include "packclass/opp.hpp"

namespace packclass {

enum class SolveStatus { kOptimal, kResourceLimit };
const char* to_string(SolveStatus status);

struct DismissedSubset {
  std::vector<std::string> boxes;
  std::string reason;  // "volume_or_pair", "opp_infeasible", "known_infeasible_subset", "resource_limit"
};

struct OkpSolution {
  SolveStatus status = SolveStatus::kOptimal;
  // Best packable subset found; optimal when status is kOptimal.
  std::vector<std::string> chosen;
  Rational value{0};
  Packing packing;
  std::uint64_t opp_calls = 0;
  SearchStats stats;  // summed over inner OPP searches
  std::vector<DismissedSubset> dismissed;
};

// Best-first search over subsets by value bound; each candidate subset is
// screened by quick_infeasible and decided by solve_opp. `limits` caps the
// whole run.
OkpSolution solve_okp(const Instance& inst, const SearchLimits& limits = {},
                      const SearchOptions& options = {});

struct HeightProbe {
  Rational height;
  Verdict verdict;
};

struct SppSolution {
  SolveStatus status = SolveStatus::kOptimal;
  Rational height{0};
  Packing packing;
  std::vector<HeightProbe> probes;
  std::vector<Rational> candidates;  // ascending candidate heights searched
};

// Minimal last-dimension container size for all boxes given the first d-1
// container sizes. Candidate heights are subset sums of the last widths,
// searched by bisection. Throws Error(kInfeasibleCrossSection).
SppSolution solve_spp(const std::vector<Box>& boxes, const std::vector<Rational>& fixed_dims,
                      const SearchLimits& limits = {}, const SearchOptions& options = {});

// Distinct subset sums of `widths` within [lo, hi], ascending.
std::vector<Rational> subset_sums(const std::vector<Rational>& widths, const Rational& lo,
                                  const Rational& hi);

}  // namespace packclass
