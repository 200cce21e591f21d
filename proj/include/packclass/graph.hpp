#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "packclass/vertex_set.hpp"

namespace packclass {

using VertexPair = std::pair<std::size_t, std::size_t>;

// Simple undirected graph over an ordered vertex list. Vertex identity is the
// index; ids are carried along so certificates can be reported by name.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> ids);
  // Vertices named "0", "1", ...
  static Graph with_order(std::size_t n);
  static Graph from_edges(std::size_t n, std::span<const VertexPair> edges);

  std::size_t order() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t v) const { return ids_[v]; }
  // Throws Error(kUnknownVertex).
  std::size_t index_of(const std::string& id) const;

  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const { return adj_[u].test(v); }
  const VertexSet& neighbors(std::size_t v) const { return adj_[v]; }
  std::span<const VertexSet> adjacency() const { return adj_; }

  std::size_t edge_count() const;
  // Pairs (u, v) with u < v in lexicographic order.
  std::vector<VertexPair> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::string> ids_;
  std::vector<VertexSet> adj_;
};

struct WeightedSet {
  std::int64_t weight = 0;
  std::vector<std::size_t> vertices;  // ascending
};

struct ChordalityResult {
  bool triangulated = true;
  // Chordless cycle of length >= 4 in traversal order when not triangulated.
  std::vector<std::size_t> chordless_cycle;
};

Graph complement(const Graph& g);

// Vertices of the result are the members of `subset` in ascending order.
// Throws Error(kUnknownVertex) if `subset` has the wrong universe.
Graph induced(const Graph& g, const VertexSet& subset);

// Vertices in cycle order a-b-c-d-a with diagonals ac, bd absent. With
// `touching`, only cycles using that edge are reported.
std::optional<std::array<std::size_t, 4>> find_induced_c4(
    const Graph& g, std::optional<VertexPair> touching = std::nullopt);

// Odd closed walk v0..v{k-1} (k >= 5) along edges of `g` such that no
// v_j v_{j+2} (indices mod k) is an edge. Vertices may repeat; the shortest
// such walk is returned.
std::optional<std::vector<std::size_t>> find_odd_2chordless_cycle(const Graph& g);

// Partial-information variant: walk edges are taken from `edges`, and a
// 2-chord pair {v_j, v_{j+2}} is acceptable only if it is in `non_chords`
// (or the two vertices coincide). With non_chords = complement of edges this
// is the plain search.
std::optional<std::vector<std::size_t>> find_odd_2chordless_cycle(
    std::span<const VertexSet> edges, std::span<const VertexSet> non_chords);

std::optional<std::array<std::size_t, 3>> find_asteroidal_triple(const Graph& g);

ChordalityResult is_triangulated(const Graph& g);

inline constexpr std::size_t kDefaultCliqueCap = 64;

// Exact branch-and-bound with a greedy colouring bound. Throws
// Error(kTooLarge) when order() > cap.
WeightedSet max_weight_clique(const Graph& g, std::span<const std::int64_t> weight,
                              std::size_t cap = kDefaultCliqueCap);

// Same search restricted to `candidates`, straight on adjacency rows.
WeightedSet max_weight_clique(std::span<const VertexSet> adjacency,
                              const VertexSet& candidates,
                              std::span<const std::int64_t> weight);

// Greedy under-approximation: grows a clique by repeatedly taking the
// heaviest compatible vertex. Always a genuine clique.
WeightedSet greedy_weight_clique(std::span<const VertexSet> adjacency,
                                 const VertexSet& candidates,
                                 std::span<const std::int64_t> weight);

// Exact heaviest stable set of an interval graph. Throws Error(kNotInterval).
WeightedSet max_weight_stable_set_interval(const Graph& g,
                                           std::span<const std::int64_t> weight);

}  // namespace packclass
