#include "packclass/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

#include "packclass/chargraph.hpp"
#include "packclass/errors.hpp"

namespace packclass {

Graph::Graph(std::vector<std::string> ids)
    : ids_(std::move(ids)), adj_(ids_.size(), VertexSet(ids_.size())) {}

Graph Graph::with_order(std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t v = 0; v < n; ++v) ids.push_back(std::to_string(v));
  return Graph(std::move(ids));
}

Graph Graph::from_edges(std::size_t n, std::span<const VertexPair> edges) {
  Graph g = with_order(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

std::size_t Graph::index_of(const std::string& id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) throw Error(ErrorKind::kUnknownVertex, "no vertex '" + id + "'");
  return static_cast<std::size_t>(it - ids_.begin());
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= order() || v >= order()) {
    throw Error(ErrorKind::kUnknownVertex, "edge endpoint out of range");
  }
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  adj_[u].set(v);
  adj_[v].set(u);
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
  adj_[u].reset(v);
  adj_[v].reset(u);
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adj_) twice += row.count();
  return twice / 2;
}

std::vector<VertexPair> Graph::edges() const {
  std::vector<VertexPair> out;
  for (std::size_t u = 0; u < order(); ++u) {
    for (std::size_t v = adj_[u].next(u + 1); v < order(); v = adj_[u].next(v + 1)) {
      out.emplace_back(u, v);
    }
  }
  return out;
}

Graph complement(const Graph& g) {
  Graph out(g.ids());
  const std::size_t n = g.order();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) out.add_edge(u, v);
    }
  }
  return out;
}

Graph induced(const Graph& g, const VertexSet& subset) {
  if (subset.universe() != g.order()) {
    throw Error(ErrorKind::kUnknownVertex, "vertex subset does not match the graph");
  }
  const auto members = subset.members();
  std::vector<std::string> ids;
  ids.reserve(members.size());
  for (auto v : members) ids.push_back(g.id(v));
  Graph out(std::move(ids));
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (g.has_edge(members[a], members[b])) out.add_edge(a, b);
    }
  }
  return out;
}

namespace {

// Induced C4 through the edge u-v: u-v-y-x-u with uy, vx absent.
std::optional<std::array<std::size_t, 4>> c4_through(const Graph& g, std::size_t u,
                                                     std::size_t v) {
  VertexSet xs = g.neighbors(u) - g.neighbors(v);
  xs.reset(v);
  for (std::size_t x = xs.first(); x < g.order(); x = xs.next(x + 1)) {
    VertexSet ys = (g.neighbors(v) & g.neighbors(x)) - g.neighbors(u);
    ys.reset(u);
    const std::size_t y = ys.first();
    if (y < g.order()) return std::array<std::size_t, 4>{u, v, y, x};
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::array<std::size_t, 4>> find_induced_c4(
    const Graph& g, std::optional<VertexPair> touching) {
  if (touching) {
    auto [u, v] = *touching;
    if (u >= g.order() || v >= g.order() || !g.has_edge(u, v)) return std::nullopt;
    return c4_through(g, u, v);
  }
  for (auto [u, v] : g.edges()) {
    if (auto c = c4_through(g, u, v)) return c;
  }
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> find_odd_2chordless_cycle(const Graph& g) {
  const Graph co = complement(g);
  return find_odd_2chordless_cycle(g.adjacency(), co.adjacency());
}

std::optional<std::vector<std::size_t>> find_odd_2chordless_cycle(
    std::span<const VertexSet> edges, std::span<const VertexSet> non_chords) {
  // States are arcs (a, b) of walk edges; (a, b) -> (b, c) is allowed when
  // {a, c} is a legal 2-chord gap. An odd closed walk in this state graph is
  // exactly an odd 2-chordless closed walk of the graph.
  const std::size_t n = edges.size();
  std::vector<VertexPair> arcs;
  std::vector<std::vector<std::size_t>> arc_id(n, std::vector<std::size_t>(n, SIZE_MAX));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = edges[a].first(); b < n; b = edges[a].next(b + 1)) {
      arc_id[a][b] = arcs.size();
      arcs.emplace_back(a, b);
    }
  }
  const std::size_t m = arcs.size();
  if (m == 0) return std::nullopt;

  auto for_each_successor = [&](std::size_t s, auto&& fn) {
    auto [a, b] = arcs[s];
    VertexSet cs = edges[b] & non_chords[a];
    cs.set(a);
    for (std::size_t c = cs.first(); c < n; c = cs.next(c + 1)) {
      if (edges[b].test(c)) fn(arc_id[b][c]);
    }
  };

  // Strongly connected components (iterative Tarjan).
  std::vector<std::size_t> index(m, SIZE_MAX), low(m, 0), comp(m, SIZE_MAX);
  std::vector<std::size_t> stack;
  std::vector<bool> on_stack(m, false);
  std::vector<std::vector<std::size_t>> succ(m);
  for (std::size_t s = 0; s < m; ++s) {
    for_each_successor(s, [&](std::size_t t) { succ[s].push_back(t); });
  }
  std::size_t counter = 0, comps = 0;
  for (std::size_t root = 0; root < m; ++root) {
    if (index[root] != SIZE_MAX) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [s, it] = call.back();
      if (it < succ[s].size()) {
        const std::size_t t = succ[s][it++];
        if (index[t] == SIZE_MAX) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          call.emplace_back(t, 0);
        } else if (on_stack[t]) {
          low[s] = std::min(low[s], index[t]);
        }
      } else {
        const std::size_t done = s;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        if (low[done] == index[done]) {
          while (true) {
            const std::size_t t = stack.back();
            stack.pop_back();
            on_stack[t] = false;
            comp[t] = comps;
            if (t == done) break;
          }
          ++comps;
        }
      }
    }
  }

  // A component holds an odd closed walk iff it is not 2-colourable.
  std::vector<int> colour(m, -1);
  std::vector<bool> odd_comp(comps, false);
  for (std::size_t s = 0; s < m; ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : succ[x]) {
        if (comp[y] != comp[x]) continue;
        if (colour[y] == -1) {
          colour[y] = 1 - colour[x];
          queue.push_back(y);
        } else if (colour[y] == colour[x]) {
          odd_comp[comp[x]] = true;
        }
      }
    }
  }

  // Shortest odd closed walk over arcs in odd components, via parity BFS.
  std::optional<std::vector<std::size_t>> best;
  for (std::size_t s = 0; s < m; ++s) {
    if (!odd_comp[comp[s]]) continue;
    std::vector<std::size_t> parent(2 * m, SIZE_MAX);
    std::vector<bool> seen(2 * m, false);
    std::deque<std::size_t> queue{2 * s};
    seen[2 * s] = true;
    bool found = false;
    while (!queue.empty() && !found) {
      const std::size_t node = queue.front();
      queue.pop_front();
      const std::size_t x = node / 2, parity = node % 2;
      for (std::size_t y : succ[x]) {
        if (comp[y] != comp[s]) continue;
        const std::size_t next = 2 * y + (1 - parity);
        if (seen[next]) continue;
        seen[next] = true;
        parent[next] = node;
        if (next == 2 * s + 1) {
          found = true;
          break;
        }
        queue.push_back(next);
      }
    }
    if (!found) continue;
    std::vector<std::size_t> walk;
    for (std::size_t node = 2 * s + 1; node != 2 * s; node = parent[node]) {
      walk.push_back(arcs[node / 2].first);
    }
    std::reverse(walk.begin(), walk.end());
    if (!best || walk.size() < best->size()) best = std::move(walk);
    if (best->size() == 5) break;  // no shorter odd 2-chordless walk exists
  }
  return best;
}

std::optional<std::array<std::size_t, 3>> find_asteroidal_triple(const Graph& g) {
  const std::size_t n = g.order();
  // component[z][v]: component label of v in G - N[z], or SIZE_MAX if removed.
  std::vector<std::vector<std::size_t>> component(n, std::vector<std::size_t>(n, SIZE_MAX));
  for (std::size_t z = 0; z < n; ++z) {
    VertexSet alive = ~g.neighbors(z);
    alive.reset(z);
    std::size_t label = 0;
    for (std::size_t s = alive.first(); s < n; s = alive.next(s + 1)) {
      if (component[z][s] != SIZE_MAX) continue;
      VertexSet frontier(n);
      frontier.set(s);
      component[z][s] = label;
      while (frontier.any()) {
        VertexSet grown(n);
        for (std::size_t x = frontier.first(); x < n; x = frontier.next(x + 1)) {
          grown |= g.neighbors(x);
        }
        grown &= alive;
        VertexSet fresh(n);
        for (std::size_t y = grown.first(); y < n; y = grown.next(y + 1)) {
          if (component[z][y] == SIZE_MAX) {
            component[z][y] = label;
            fresh.set(y);
          }
        }
        frontier = fresh;
      }
      ++label;
    }
  }
  auto linked = [&](std::size_t a, std::size_t b, std::size_t avoid) {
    return component[avoid][a] != SIZE_MAX && component[avoid][a] == component[avoid][b];
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (g.has_edge(a, b)) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (linked(a, b, c) && linked(a, c, b) && linked(b, c, a)) {
          return std::array<std::size_t, 3>{a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

// Maximum cardinality search; returns vertices in visit order.
std::vector<std::size_t> mcs_order(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> label(n, 0), order;
  std::vector<bool> visited(n, false);
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!visited[v] && (pick == n || label[v] > label[pick])) pick = v;
    }
    visited[pick] = true;
    order.push_back(pick);
    const VertexSet& nb = g.neighbors(pick);
    for (std::size_t u = nb.first(); u < n; u = nb.next(u + 1)) {
      if (!visited[u]) ++label[u];
    }
  }
  return order;
}

std::vector<std::size_t> find_chordless_cycle(const Graph& g) {
  // v with non-adjacent neighbours x, y joined by a path outside N[v]: the
  // shortest such path closes a chordless cycle through v.
  const std::size_t n = g.order();
  for (std::size_t v = 0; v < n; ++v) {
    const VertexSet& nb = g.neighbors(v);
    for (std::size_t x = nb.first(); x < n; x = nb.next(x + 1)) {
      for (std::size_t y = nb.next(x + 1); y < n; y = nb.next(y + 1)) {
        if (g.has_edge(x, y)) continue;
        VertexSet allowed = ~nb;
        allowed.reset(v);
        allowed.set(y);
        std::vector<std::size_t> parent(n, SIZE_MAX);
        std::deque<std::size_t> queue{x};
        parent[x] = x;
        while (!queue.empty() && parent[y] == SIZE_MAX) {
          const std::size_t a = queue.front();
          queue.pop_front();
          const VertexSet next = g.neighbors(a) & allowed;
          for (std::size_t b = next.first(); b < n; b = next.next(b + 1)) {
            if (parent[b] != SIZE_MAX) continue;
            parent[b] = a;
            if (b != y) queue.push_back(b);
          }
        }
        if (parent[y] == SIZE_MAX) continue;
        std::vector<std::size_t> cycle{v};
        std::vector<std::size_t> path;
        for (std::size_t a = y; a != x; a = parent[a]) path.push_back(a);
        path.push_back(x);
        std::reverse(path.begin(), path.end());
        cycle.insert(cycle.end(), path.begin(), path.end());
        return cycle;
      }
    }
  }
  return {};
}

}  // namespace

ChordalityResult is_triangulated(const Graph& g) {
  const std::size_t n = g.order();
  const auto visit = mcs_order(g);
  // Reverse MCS order is a perfect elimination ordering iff g is chordal:
  // the earlier-visited neighbours of each vertex must form a clique.
  VertexSet earlier(n);
  bool peo = true;
  for (std::size_t v : visit) {
    const VertexSet prior = g.neighbors(v) & earlier;
    for (std::size_t u = prior.first(); u < n && peo; u = prior.next(u + 1)) {
      VertexSet others = prior;
      others.reset(u);
      if (!others.is_subset_of(g.neighbors(u))) peo = false;
    }
    if (!peo) break;
    earlier.set(v);
  }
  if (peo) return {};
  return {false, find_chordless_cycle(g)};
}

namespace {

class CliqueSearch {
 public:
  CliqueSearch(std::span<const VertexSet> adj, std::span<const std::int64_t> weight)
      : adj_(adj), weight_(weight) {}

  WeightedSet run(const VertexSet& candidates) {
    std::vector<std::size_t> current;
    expand(candidates, 0, current);
    std::sort(best_.vertices.begin(), best_.vertices.end());
    return best_;
  }

 private:
  void expand(VertexSet p, std::int64_t value, std::vector<std::size_t>& current) {
    std::vector<std::size_t> order;
    std::vector<std::int64_t> bound;
    VertexSet uncoloured = p;
    std::int64_t acc = 0;
    while (uncoloured.any()) {
      VertexSet q = uncoloured;
      std::int64_t heaviest = 0;
      while (q.any()) {
        const std::size_t v = q.first();
        q.reset(v);
        q -= adj_[v];
        uncoloured.reset(v);
        order.push_back(v);
        heaviest = std::max(heaviest, weight_[v]);
      }
      acc += heaviest;
      bound.resize(order.size(), acc);
    }
    for (std::size_t k = order.size(); k-- > 0;) {
      if (value + bound[k] <= best_.weight && !best_.vertices.empty()) return;
      const std::size_t v = order[k];
      current.push_back(v);
      const std::int64_t next_value = value + weight_[v];
      if (best_.vertices.empty() || next_value > best_.weight) {
        best_.weight = next_value;
        best_.vertices = current;
      }
      const VertexSet next = p & adj_[v];
      if (next.any()) expand(next, next_value, current);
      current.pop_back();
      p.reset(v);
    }
  }

  std::span<const VertexSet> adj_;
  std::span<const std::int64_t> weight_;
  WeightedSet best_;
};

}  // namespace

WeightedSet max_weight_clique(const Graph& g, std::span<const std::int64_t> weight,
                              std::size_t cap) {
  if (g.order() > cap) {
    throw Error(ErrorKind::kTooLarge, "exact clique search is capped at " +
                                          std::to_string(cap) + " vertices");
  }
  if (weight.size() != g.order()) {
    throw std::invalid_argument("one weight per vertex is required");
  }
  return max_weight_clique(g.adjacency(), VertexSet::full(g.order()), weight);
}

WeightedSet max_weight_clique(std::span<const VertexSet> adjacency,
                              const VertexSet& candidates,
                              std::span<const std::int64_t> weight) {
  if (candidates.empty()) return {};
  return CliqueSearch(adjacency, weight).run(candidates);
}

WeightedSet greedy_weight_clique(std::span<const VertexSet> adjacency,
                                 const VertexSet& candidates,
                                 std::span<const std::int64_t> weight) {
  WeightedSet out;
  VertexSet open = candidates;
  const std::size_t n = candidates.universe();
  while (open.any()) {
    std::size_t pick = n;
    for (std::size_t v = open.first(); v < n; v = open.next(v + 1)) {
      if (pick == n || weight[v] > weight[pick]) pick = v;
    }
    out.vertices.push_back(pick);
    out.weight += weight[pick];
    open &= adjacency[pick];
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

WeightedSet max_weight_stable_set_interval(const Graph& g,
                                           std::span<const std::int64_t> weight) {
  if (weight.size() != g.order()) {
    throw std::invalid_argument("one weight per vertex is required");
  }
  if (!is_interval_graph(g).interval) {
    throw Error(ErrorKind::kNotInterval, "graph is not an interval graph");
  }
  // A transitive orientation of the complement is the left-of order of an
  // interval model; stable sets are its chains, so the heaviest stable set is
  // the heaviest chain (weighted interval scheduling over that order).
  auto orientation = transitive_orientation(complement(g));
  return max_weight_chain(*orientation.dag, weight);
}

}  // namespace packclass
