#include "packclass/chargraph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "packclass/errors.hpp"

namespace packclass {

Dag::Dag(std::vector<std::string> ids)
    : ids_(std::move(ids)), out_(ids_.size(), VertexSet(ids_.size())) {}

std::size_t Dag::arc_count() const {
  std::size_t c = 0;
  for (const auto& row : out_) c += row.count();
  return c;
}

std::vector<VertexPair> Dag::arcs() const {
  std::vector<VertexPair> out;
  for (std::size_t u = 0; u < order(); ++u) {
    for (std::size_t v = out_[u].first(); v < order(); v = out_[u].next(v + 1)) {
      out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::size_t> Dag::topological_order() const {
  const std::size_t n = order();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = out_[u].first(); v < n; v = out_[u].next(v + 1)) ++indegree[v];
  }
  VertexSet ready(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.set(v);
  }
  std::vector<std::size_t> order_out;
  order_out.reserve(n);
  while (ready.any()) {
    const std::size_t u = ready.first();
    ready.reset(u);
    order_out.push_back(u);
    for (std::size_t v = out_[u].first(); v < n; v = out_[u].next(v + 1)) {
      if (--indegree[v] == 0) ready.set(v);
    }
  }
  if (order_out.size() != n) {
    throw Error(ErrorKind::kCyclicOrientation, "orientation contains a directed cycle");
  }
  return order_out;
}

bool Dag::is_acyclic() const {
  try {
    topological_order();
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool is_transitive_orientation_of(const Dag& dag, const Graph& g) {
  const std::size_t n = g.order();
  if (dag.order() != n) return false;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const bool forward = dag.has_arc(u, v), backward = dag.has_arc(v, u);
      if (g.has_edge(u, v) != (forward || backward)) return false;
      if (forward && backward) return false;
    }
    if (dag.has_arc(u, u)) return false;
  }
  for (std::size_t a = 0; a < n; ++a) {
    const VertexSet& mid = dag.successors(a);
    for (std::size_t b = mid.first(); b < n; b = mid.next(b + 1)) {
      if (!dag.successors(b).is_subset_of(dag.successors(a))) return false;
    }
  }
  return dag.is_acyclic();
}

IntervalResult is_interval_graph(const Graph& g) {
  auto chordal = is_triangulated(g);
  if (!chordal.triangulated) {
    return {false, IntervalWitness{IntervalWitness::Kind::kChordlessCycle,
                                   std::move(chordal.chordless_cycle)}};
  }
  if (auto at = find_asteroidal_triple(g)) {
    return {false, IntervalWitness{IntervalWitness::Kind::kAsteroidalTriple,
                                   {(*at)[0], (*at)[1], (*at)[2]}}};
  }
  return {};
}

OrientationResult transitive_orientation(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<VertexSet> remaining(g.adjacency().begin(), g.adjacency().end());
  Dag result(g.ids());

  while (true) {
    std::size_t seed_u = n, seed_v = n;
    for (std::size_t u = 0; u < n && seed_u == n; ++u) {
      const std::size_t v = remaining[u].next(u + 1);
      if (v < n) {
        seed_u = u;
        seed_v = v;
      }
    }
    if (seed_u == n) break;

    // Implication class of (seed_u, seed_v) in the remaining graph.
    std::vector<VertexSet> in_class(n, VertexSet(n));
    std::deque<VertexPair> queue{{seed_u, seed_v}};
    in_class[seed_u].set(seed_v);
    bool conflict = false;
    auto force = [&](std::size_t a, std::size_t b) {
      if (in_class[a].test(b)) return;
      if (in_class[b].test(a)) conflict = true;
      in_class[a].set(b);
      queue.emplace_back(a, b);
    };
    while (!queue.empty() && !conflict) {
      auto [a, b] = queue.front();
      queue.pop_front();
      // Same tail: a->b forces a->c when {b, c} is not a remaining edge.
      VertexSet tails = remaining[a] - remaining[b];
      tails.reset(b);
      for (std::size_t c = tails.first(); c < n; c = tails.next(c + 1)) force(a, c);
      // Same head: a->b forces c->b when {a, c} is not a remaining edge.
      VertexSet heads = remaining[b] - remaining[a];
      heads.reset(a);
      for (std::size_t c = heads.first(); c < n; c = heads.next(c + 1)) force(c, b);
    }
    if (conflict) return {std::nullopt, find_odd_2chordless_cycle(g)};

    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = in_class[a].first(); b < n; b = in_class[a].next(b + 1)) {
        result.add_arc(a, b);
        remaining[a].reset(b);
        remaining[b].reset(a);
      }
    }
  }
  if (!is_transitive_orientation_of(result, g)) {
    throw std::logic_error("implication-class orientation is not transitive");
  }
  return {std::move(result), std::nullopt};
}

namespace {

class OrientationEnumerator {
 public:
  OrientationEnumerator(const Graph& g, std::size_t cap)
      : g_(g), cap_(cap), edges_(g.edges()) {}

  OrientationEnumeration run() {
    std::vector<VertexSet> out(g_.order(), VertexSet(g_.order()));
    recurse(std::move(out), 0);
    std::sort(result_.orientations.begin(), result_.orientations.end());
    return std::move(result_);
  }

 private:
  bool oriented(const std::vector<VertexSet>& out, std::size_t u, std::size_t v) const {
    return out[u].test(v) || out[v].test(u);
  }

  // Orients a->b and closes under the forcing rules; false on contradiction.
  bool assign(std::vector<VertexSet>& out, std::size_t a, std::size_t b) const {
    const std::size_t n = g_.order();
    std::deque<VertexPair> queue{{a, b}};
    auto put = [&](std::size_t x, std::size_t y) {
      if (out[y].test(x)) return false;
      if (!out[x].test(y)) queue.emplace_back(x, y);
      return true;
    };
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      if (out[x].test(y)) continue;
      if (out[y].test(x)) return false;
      out[x].set(y);
      for (std::size_t c = 0; c < n; ++c) {
        if (c == x || c == y) continue;
        // x->y->c needs x->c; c->x->y needs c->y.
        if (out[y].test(c)) {
          if (!g_.has_edge(x, c) || !put(x, c)) return false;
        }
        if (out[c].test(x)) {
          if (!g_.has_edge(c, y) || !put(c, y)) return false;
        }
        // Gamma forcing on non-edges.
        if (g_.has_edge(y, c) && !g_.has_edge(x, c) && !put(c, y)) return false;
        if (g_.has_edge(x, c) && !g_.has_edge(y, c) && !put(x, c)) return false;
      }
    }
    return true;
  }

  void recurse(std::vector<VertexSet> out, std::size_t next) {
    while (next < edges_.size() && oriented(out, edges_[next].first, edges_[next].second)) {
      ++next;
    }
    if (next == edges_.size()) {
      Dag dag(g_.ids());
      for (std::size_t u = 0; u < g_.order(); ++u) {
        for (std::size_t v = out[u].first(); v < g_.order(); v = out[u].next(v + 1)) {
          dag.add_arc(u, v);
        }
      }
      if (!is_transitive_orientation_of(dag, g_)) return;
      ++result_.total;
      if (result_.orientations.size() < cap_) result_.orientations.push_back(std::move(dag));
      return;
    }
    auto [u, v] = edges_[next];
    auto forward = out;
    if (assign(forward, u, v)) recurse(std::move(forward), next + 1);
    if (assign(out, v, u)) recurse(std::move(out), next + 1);
  }

  const Graph& g_;
  std::size_t cap_;
  std::vector<VertexPair> edges_;
  OrientationEnumeration result_;
};

}  // namespace

OrientationEnumeration enumerate_transitive_orientations(const Graph& g, std::size_t cap) {
  if (g.edge_count() > kOrientationEdgeCap) {
    throw Error(ErrorKind::kTooLarge,
                "orientation enumeration is limited to " +
                    std::to_string(kOrientationEdgeCap) + " edges");
  }
  return OrientationEnumerator(g, cap).run();
}

WeightedSet max_weight_chain(const Dag& dag, std::span<const std::int64_t> weight) {
  const std::size_t n = dag.order();
  if (n == 0) return {};
  const auto topo = dag.topological_order();
  std::vector<std::int64_t> best(n, 0);
  std::vector<std::size_t> parent(n, SIZE_MAX);
  for (std::size_t v : topo) best[v] = weight[v];
  for (std::size_t u : topo) {
    const VertexSet& next = dag.successors(u);
    for (std::size_t v = next.first(); v < n; v = next.next(v + 1)) {
      if (best[u] + weight[v] > best[v]) {
        best[v] = best[u] + weight[v];
        parent[v] = u;
      }
    }
  }
  std::size_t end = 0;
  for (std::size_t v = 1; v < n; ++v) {
    if (best[v] > best[end]) end = v;
  }
  WeightedSet out{best[end], {}};
  for (std::size_t v = end; v != SIZE_MAX; v = parent[v]) out.vertices.push_back(v);
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

}  // namespace packclass
