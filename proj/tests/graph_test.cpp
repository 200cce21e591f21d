#include <random>

#include <gtest/gtest.h>

#include "packclass/errors.hpp"
#include "packclass/graph.hpp"
#include "packclass/oracle.hpp"
#include "support.hpp"

namespace packclass {
namespace {

using testing::complete;
using testing::cycle;
using testing::graph_from_mask;

// Definitional certificate checks.

bool valid_induced_c4(const Graph& g, const std::array<std::size_t, 4>& c) {
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = k + 1; j < 4; ++j) {
      if (c[k] == c[j]) return false;
    }
    if (!g.has_edge(c[k], c[(k + 1) % 4])) return false;
  }
  return !g.has_edge(c[0], c[2]) && !g.has_edge(c[1], c[3]);
}

bool valid_odd_walk(const Graph& g, const std::vector<std::size_t>& w) {
  const std::size_t k = w.size();
  if (k < 5 || k % 2 == 0) return false;
  for (std::size_t j = 0; j < k; ++j) {
    if (w[j] == w[(j + 1) % k] || !g.has_edge(w[j], w[(j + 1) % k])) return false;
    const std::size_t a = w[j], c = w[(j + 2) % k];
    if (a != c && g.has_edge(a, c)) return false;
  }
  return true;
}

bool valid_chordless_cycle(const Graph& g, const std::vector<std::size_t>& c) {
  const std::size_t k = c.size();
  if (k < 4) return false;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (c[a] == c[b]) return false;
      const bool consecutive = b == a + 1 || (a == 0 && b == k - 1);
      if (g.has_edge(c[a], c[b]) != consecutive) return false;
    }
  }
  return true;
}

bool path_avoiding(const Graph& g, std::size_t a, std::size_t b, std::size_t z) {
  std::vector<char> blocked(g.order(), 0), seen(g.order(), 0);
  blocked[z] = 1;
  for (std::size_t v = 0; v < g.order(); ++v) blocked[v] |= g.has_edge(z, v);
  if (blocked[a] || blocked[b]) return false;
  std::vector<std::size_t> todo{a};
  seen[a] = 1;
  while (!todo.empty()) {
    const std::size_t x = todo.back();
    todo.pop_back();
    if (x == b) return true;
    for (std::size_t y = 0; y < g.order(); ++y) {
      if (g.has_edge(x, y) && !seen[y] && !blocked[y]) {
        seen[y] = 1;
        todo.push_back(y);
      }
    }
  }
  return false;
}

bool valid_asteroidal_triple(const Graph& g, const std::array<std::size_t, 3>& t) {
  return t[0] != t[1] && t[1] != t[2] && t[0] != t[2] && path_avoiding(g, t[0], t[1], t[2]) &&
         path_avoiding(g, t[0], t[2], t[1]) && path_avoiding(g, t[1], t[2], t[0]);
}

std::int64_t brute_best(const Graph& g, std::span<const std::int64_t> w, bool clique) {
  std::int64_t best = 0;
  const std::size_t n = g.order();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    bool ok = true;
    std::int64_t total = 0;
    for (std::size_t a = 0; a < n && ok; ++a) {
      if (!(mask >> a & 1U)) continue;
      total += w[a];
      for (std::size_t b = a + 1; b < n && ok; ++b) {
        if ((mask >> b & 1U) && g.has_edge(a, b) != clique) ok = false;
      }
    }
    if (ok) best = std::max(best, total);
  }
  return best;
}

Graph long_claw() {
  // Centre 0, legs 0-1-2, 0-3-4, 0-5-6.
  Graph g = Graph::with_order(7);
  for (auto [u, v] : std::vector<VertexPair>{{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}}) {
    g.add_edge(u, v);
  }
  return g;
}

// Overlap graph of random integer intervals.
Graph random_interval_graph(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> start(0, 10), length(1, 4);
  std::vector<std::pair<int, int>> iv;
  for (std::size_t k = 0; k < n; ++k) {
    const int s = start(rng);
    iv.emplace_back(s, s + length(rng));
  }
  Graph g = Graph::with_order(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (iv[a].first < iv[b].second && iv[b].first < iv[a].second) g.add_edge(a, b);
    }
  }
  return g;
}

TEST(Graph, BasicsAndErrors) {
  Graph g({"x", "y", "z"});
  g.add_edge(0, 2);
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_EQ(g.edge_count(), 1U);
  EXPECT_EQ(g.index_of("z"), 2U);
  EXPECT_THROW(g.index_of("w"), Error);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
  g.remove_edge(2, 0);
  EXPECT_EQ(g.edge_count(), 0U);
  const std::vector<VertexPair> edges{{0, 1}, {1, 2}};
  EXPECT_EQ(Graph::from_edges(3, edges).edges(), edges);
}

TEST(Complement, EmptyToTriangleAndInvolution) {
  EXPECT_EQ(complement(Graph::with_order(3)), complete(3));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Graph g = graph_from_mask(6, rng() & ((1U << 15) - 1));
    EXPECT_EQ(complement(complement(g)), g);
  }
}

TEST(Induced, Examples) {
  const Graph tri = complete(3);
  VertexSet two(3);
  two.set(0);
  two.set(2);
  const Graph edge = induced(tri, two);
  EXPECT_EQ(edge.order(), 2U);
  EXPECT_EQ(edge.edge_count(), 1U);
  EXPECT_EQ(edge.ids(), (std::vector<std::string>{"0", "2"}));
  EXPECT_EQ(induced(tri, VertexSet::full(3)), tri);
  EXPECT_EQ(induced(tri, VertexSet(3)).order(), 0U);
  EXPECT_THROW(induced(tri, VertexSet(4)), Error);
}

TEST(FindInducedC4, Examples) {
  const auto c4 = find_induced_c4(cycle(4));
  ASSERT_TRUE(c4);
  EXPECT_TRUE(valid_induced_c4(cycle(4), *c4));

  Graph diamond = cycle(4);
  diamond.add_edge(0, 2);
  EXPECT_FALSE(find_induced_c4(diamond));

  // v1v2, v3v4, v4v1, v2v3 as indices 0..3.
  Graph g = Graph::with_order(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  g.add_edge(1, 2);
  const auto found = find_induced_c4(g);
  ASSERT_TRUE(found);
  std::array<std::size_t, 4> sorted = *found;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::array<std::size_t, 4>{0, 1, 2, 3}));
}

TEST(FindInducedC4, TouchingRestrictsTheSearch) {
  // Two disjoint C4s; only the one through edge {4,5} may be reported.
  Graph g = Graph::with_order(8);
  for (std::size_t k = 0; k < 4; ++k) {
    g.add_edge(k, (k + 1) % 4);
    g.add_edge(4 + k, 4 + (k + 1) % 4);
  }
  const auto c = find_induced_c4(g, VertexPair{4, 5});
  ASSERT_TRUE(c);
  EXPECT_TRUE(valid_induced_c4(g, *c));
  for (auto v : *c) EXPECT_GE(v, 4U);
  g.remove_edge(4, 5);
  EXPECT_FALSE(find_induced_c4(g, VertexPair{4, 5}));
}

TEST(FindOdd2ChordlessCycle, Examples) {
  const auto c5 = find_odd_2chordless_cycle(cycle(5));
  ASSERT_TRUE(c5);
  EXPECT_TRUE(valid_odd_walk(cycle(5), *c5));
  EXPECT_FALSE(find_odd_2chordless_cycle(complete(3)));
  const auto c7 = find_odd_2chordless_cycle(cycle(7));
  ASSERT_TRUE(c7);
  EXPECT_TRUE(valid_odd_walk(cycle(7), *c7));
  EXPECT_FALSE(find_odd_2chordless_cycle(cycle(6)));
}

TEST(FindOdd2ChordlessCycle, PartialInformationNeedsKnownNonChords) {
  const Graph c5 = cycle(5);
  const Graph none = Graph::with_order(5);
  // With no pair known to be a non-chord the walk cannot be certified.
  EXPECT_FALSE(find_odd_2chordless_cycle(c5.adjacency(), none.adjacency()));
  const Graph gaps = complement(c5);
  EXPECT_TRUE(find_odd_2chordless_cycle(c5.adjacency(), gaps.adjacency()));
}

TEST(FindAsteroidalTriple, Examples) {
  const Graph claw = long_claw();
  const auto at = find_asteroidal_triple(claw);
  ASSERT_TRUE(at);
  EXPECT_TRUE(valid_asteroidal_triple(claw, *at));
  std::array<std::size_t, 3> tips = *at;
  std::sort(tips.begin(), tips.end());
  EXPECT_EQ(tips, (std::array<std::size_t, 3>{2, 4, 6}));
  EXPECT_FALSE(find_asteroidal_triple(complete(5)));
  EXPECT_FALSE(find_asteroidal_triple(cycle(4)));
}

TEST(IsTriangulated, Examples) {
  const auto c4 = is_triangulated(cycle(4));
  EXPECT_FALSE(c4.triangulated);
  EXPECT_TRUE(valid_chordless_cycle(cycle(4), c4.chordless_cycle));
  EXPECT_TRUE(is_triangulated(long_claw()).triangulated);
  EXPECT_TRUE(is_triangulated(complete(6)).triangulated);
}

TEST(MaxWeightClique, Examples) {
  const std::vector<std::int64_t> w{1, 2, 3};
  const auto tri = max_weight_clique(complete(3), w);
  EXPECT_EQ(tri.weight, 6);
  EXPECT_EQ(tri.vertices, (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<std::int64_t> w2{5, 7};
  const auto single = max_weight_clique(Graph::with_order(2), w2);
  EXPECT_EQ(single.weight, 7);
  EXPECT_EQ(single.vertices, (std::vector<std::size_t>{1}));
  const std::vector<std::int64_t> unit(65, 1);
  EXPECT_THROW(max_weight_clique(Graph::with_order(65), unit), Error);
}

TEST(MaxWeightClique, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> weight(1, 9);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 8;
    const Graph g = graph_from_mask(n, rng());
    std::vector<std::int64_t> w(n);
    for (auto& x : w) x = weight(rng);
    const auto best = max_weight_clique(g, w);
    EXPECT_EQ(best.weight, brute_best(g, w, true));
    std::int64_t sum = 0;
    for (std::size_t a = 0; a < best.vertices.size(); ++a) {
      sum += w[best.vertices[a]];
      for (std::size_t b = a + 1; b < best.vertices.size(); ++b) {
        EXPECT_TRUE(g.has_edge(best.vertices[a], best.vertices[b]));
      }
    }
    EXPECT_EQ(sum, best.weight);

    const auto greedy = greedy_weight_clique(g.adjacency(), VertexSet::full(n), w);
    EXPECT_LE(greedy.weight, best.weight);
    for (std::size_t a = 0; a < greedy.vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < greedy.vertices.size(); ++b) {
        EXPECT_TRUE(g.has_edge(greedy.vertices[a], greedy.vertices[b]));
      }
    }
  }
}

TEST(MaxWeightStableSetInterval, Examples) {
  Graph path = Graph::with_order(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  const std::vector<std::int64_t> w{2, 1, 2};
  const auto s = max_weight_stable_set_interval(path, w);
  EXPECT_EQ(s.weight, 4);
  EXPECT_EQ(s.vertices, (std::vector<std::size_t>{0, 2}));
  const std::vector<std::int64_t> w4{3, 8, 1, 5};
  const auto k = max_weight_stable_set_interval(complete(4), w4);
  EXPECT_EQ(k.weight, 8);
  EXPECT_EQ(k.vertices, (std::vector<std::size_t>{1}));
  const std::vector<std::int64_t> unit(4, 1);
  EXPECT_THROW(max_weight_stable_set_interval(cycle(4), unit), Error);
}

TEST(MaxWeightStableSetInterval, MatchesBruteForceAndCliqueDuality) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> weight(1, 9);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 8;
    const Graph g = random_interval_graph(rng, n);
    std::vector<std::int64_t> w(n);
    for (auto& x : w) x = weight(rng);
    const auto s = max_weight_stable_set_interval(g, w);
    EXPECT_EQ(s.weight, brute_best(g, w, false));
    for (std::size_t a = 0; a < s.vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < s.vertices.size(); ++b) {
        EXPECT_FALSE(g.has_edge(s.vertices[a], s.vertices[b]));
      }
    }
    EXPECT_EQ(max_weight_clique(complement(g), w).weight, s.weight);
  }
}

TEST(GraphProperty, CertificatesValidateOnAllSmallGraphs) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const Graph g = graph_from_mask(n, mask);
      if (auto c = find_induced_c4(g)) ASSERT_TRUE(valid_induced_c4(g, *c)) << mask;
      if (auto w = find_odd_2chordless_cycle(g)) ASSERT_TRUE(valid_odd_walk(g, *w)) << mask;
      const auto at = find_asteroidal_triple(g);
      if (at) ASSERT_TRUE(valid_asteroidal_triple(g, *at)) << mask;
      const auto tri = is_triangulated(g);
      if (!tri.triangulated) ASSERT_TRUE(valid_chordless_cycle(g, tri.chordless_cycle)) << mask;
      ASSERT_EQ(tri.triangulated && !at, oracle::oracle_is_interval(g)) << mask;
    }
  }
}

}  // namespace
}  // namespace packclass
