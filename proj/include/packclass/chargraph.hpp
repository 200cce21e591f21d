#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "packclass/graph.hpp"
#include "packclass/vertex_set.hpp"

namespace packclass {

// Directed graph over the same indexed vertex list as a Graph.
class Dag {
 public:
  Dag() = default;
  explicit Dag(std::vector<std::string> ids);

  std::size_t order() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }

  void add_arc(std::size_t from, std::size_t to) { out_[from].set(to); }
  bool has_arc(std::size_t from, std::size_t to) const { return out_[from].test(to); }
  const VertexSet& successors(std::size_t v) const { return out_[v]; }
  std::size_t arc_count() const;
  std::vector<VertexPair> arcs() const;

  // Kahn order, ties broken by lowest index. Throws Error(kCyclicOrientation).
  std::vector<std::size_t> topological_order() const;
  bool is_acyclic() const;

  friend bool operator==(const Dag&, const Dag&) = default;
  friend bool operator<(const Dag& a, const Dag& b) { return a.arcs() < b.arcs(); }

 private:
  std::vector<std::string> ids_;
  std::vector<VertexSet> out_;
};

// Acyclic, orients exactly E(g), and transitively closed.
bool is_transitive_orientation_of(const Dag& dag, const Graph& g);

struct IntervalWitness {
  enum class Kind { kChordlessCycle, kAsteroidalTriple };
  Kind kind;
  std::vector<std::size_t> vertices;
};

struct IntervalResult {
  bool interval = true;
  std::optional<IntervalWitness> witness;
};

// Triangulated and free of asteroidal triples.
IntervalResult is_interval_graph(const Graph& g);

struct OrientationResult {
  std::optional<Dag> dag;
  // Odd 2-chordless closed walk, present whenever dag is absent.
  std::optional<std::vector<std::size_t>> odd_cycle;

  bool ok() const { return dag.has_value(); }
};

// Implication-class (edge forcing) orientation. Free choices orient the
// lexicographically lowest remaining edge from lower to higher index.
OrientationResult transitive_orientation(const Graph& g);

inline constexpr std::size_t kOrientationEdgeCap = 30;

struct OrientationEnumeration {
  std::vector<Dag> orientations;  // at most `cap`, sorted by arc list
  std::size_t total = 0;          // exact number of transitive orientations
};

// Backtracking over edge directions with transitivity propagation. Throws
// Error(kTooLarge) when edge_count() > kOrientationEdgeCap.
OrientationEnumeration enumerate_transitive_orientations(const Graph& g,
                                                         std::size_t cap);

// Heaviest directed path (a chain of the partial order) in a transitively
// closed DAG.
WeightedSet max_weight_chain(const Dag& dag, std::span<const std::int64_t> weight);

}  // namespace packclass
