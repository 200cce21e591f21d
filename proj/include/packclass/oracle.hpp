#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "packclass/graph.hpp"
#include "packclass/model.hpp"

// Brute-force ground truth for small inputs. Nothing here calls into the
// production algorithms it is used to check.
namespace packclass::oracle {

struct OracleConfig {
  std::size_t max_boxes = 5;
  std::size_t max_vertices = 7;
  std::size_t orientation_edge_cap = 30;
};

struct OppVerdict {
  bool feasible = false;
  std::optional<Packing> packing;
};

// Exhaustive search over gapless coordinates: every p_i(b) is 0 or a sum of
// widths of other boxes. Throws Error(kTooLarge) above max_boxes.
OppVerdict brute_force_opp(const Instance& inst, const OracleConfig& config = {});

// Simplicial elimination plus an all-triples asteroidal check.
bool oracle_is_interval(const Graph& g, const OracleConfig& config = {});

// Searches for a transitive orientation edge by edge.
bool oracle_is_comparability(const Graph& g, const OracleConfig& config = {});

// All packing classes of the instance's boxes (up to `cap`), by enumerating
// every assignment of box pairs to dimensions. Requires n <= max_boxes, d <= 2.
std::vector<PackingClass> enumerate_packing_classes(const Instance& inst, std::size_t cap,
                                                    const OracleConfig& config = {});

// Largest total value over subsets that brute_force_opp can pack.
Rational brute_force_okp_value(const Instance& inst, const OracleConfig& config = {});

// Smallest last-dimension size (over all subset sums of the last widths, at
// least the widest box) for which brute_force_opp succeeds.
Rational brute_force_min_height(const std::vector<Box>& boxes,
                                const std::vector<Rational>& fixed_dims,
                                const OracleConfig& config = {});

}  // namespace packclass::oracle
