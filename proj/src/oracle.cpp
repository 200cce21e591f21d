#include "packclass/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "packclass/errors.hpp"

namespace packclass::oracle {

namespace {

using Matrix = std::vector<std::vector<bool>>;

Matrix to_matrix(const Graph& g) {
  const std::size_t n = g.order();
  Matrix m(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) m[u][v] = u != v && g.has_edge(u, v);
  }
  return m;
}

void require_small(std::size_t have, std::size_t cap, const char* what) {
  if (have > cap) {
    throw Error(ErrorKind::kTooLarge, std::string("oracle ") + what + " limit is " +
                                          std::to_string(cap) + ", got " +
                                          std::to_string(have));
  }
}

// Integer sizes per dimension: lcm of all denominators in that dimension.
struct Scaled {
  std::vector<std::int64_t> scale;
  std::vector<std::vector<std::int64_t>> size;  // [box][dim]
  std::vector<std::int64_t> room;               // [dim]
};

Scaled scale_instance(const Instance& inst) {
  const std::size_t d = inst.dimensions(), n = inst.box_count();
  Scaled s;
  s.size.assign(n, std::vector<std::int64_t>(d));
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t l = denominator64(inst.container()[i]);
    for (std::size_t b = 0; b < n; ++b) l = std::lcm(l, denominator64(inst.box(b).size[i]));
    s.scale.push_back(l);
    s.room.push_back(numerator64(inst.container()[i]) * (l / denominator64(inst.container()[i])));
    for (std::size_t b = 0; b < n; ++b) {
      const Rational& w = inst.box(b).size[i];
      s.size[b][i] = numerator64(w) * (l / denominator64(w));
    }
  }
  return s;
}

class BruteForcePlacer {
 public:
  explicit BruteForcePlacer(const Scaled& s) : s_(s), n_(s.size.size()), d_(s.room.size()) {
    // Candidate coordinates of box b in dimension i.
    candidates_.assign(n_, std::vector<std::vector<std::int64_t>>(d_));
    for (std::size_t b = 0; b < n_; ++b) {
      for (std::size_t i = 0; i < d_; ++i) {
        std::set<std::int64_t> sums{0};
        for (std::size_t c = 0; c < n_; ++c) {
          if (c == b) continue;
          std::set<std::int64_t> grown = sums;
          for (auto x : sums) grown.insert(x + s.size[c][i]);
          sums = std::move(grown);
        }
        for (auto x : sums) {
          if (x + s.size[b][i] <= s.room[i]) candidates_[b][i].push_back(x);
        }
      }
    }
    pos_.assign(n_, std::vector<std::int64_t>(d_, 0));
  }

  bool place(std::size_t b) {
    if (b == n_) return true;
    std::vector<std::size_t> pick(d_, 0);
    for (std::size_t i = 0; i < d_; ++i) {
      if (candidates_[b][i].empty()) return false;
    }
    while (true) {
      for (std::size_t i = 0; i < d_; ++i) pos_[b][i] = candidates_[b][i][pick[i]];
      if (disjoint_from_earlier(b) && place(b + 1)) return true;
      std::size_t i = 0;
      while (i < d_ && ++pick[i] == candidates_[b][i].size()) pick[i++] = 0;
      if (i == d_) return false;
    }
  }

  const std::vector<std::vector<std::int64_t>>& positions() const { return pos_; }

 private:
  bool disjoint_from_earlier(std::size_t b) const {
    for (std::size_t c = 0; c < b; ++c) {
      bool apart = false;
      for (std::size_t i = 0; i < d_ && !apart; ++i) {
        apart = pos_[b][i] + s_.size[b][i] <= pos_[c][i] ||
                pos_[c][i] + s_.size[c][i] <= pos_[b][i];
      }
      if (!apart) return false;
    }
    return true;
  }

  const Scaled& s_;
  std::size_t n_, d_;
  std::vector<std::vector<std::vector<std::int64_t>>> candidates_;
  std::vector<std::vector<std::int64_t>> pos_;
};

}  // namespace

OppVerdict brute_force_opp(const Instance& inst, const OracleConfig& config) {
  require_small(inst.box_count(), config.max_boxes, "box");
  const Scaled s = scale_instance(inst);
  BruteForcePlacer placer(s);
  if (!placer.place(0)) return {};
  Packing p;
  for (std::size_t b = 0; b < inst.box_count(); ++b) {
    std::vector<Rational> pos;
    for (std::size_t i = 0; i < inst.dimensions(); ++i) {
      pos.emplace_back(placer.positions()[b][i], s.scale[i]);
    }
    p.positions.emplace(inst.box(b).id, std::move(pos));
  }
  return {true, std::move(p)};
}

namespace {

bool chordal_by_elimination(Matrix m) {
  const std::size_t n = m.size();
  std::vector<bool> gone(n, false);
  for (std::size_t round = 0; round < n; ++round) {
    bool removed = false;
    for (std::size_t v = 0; v < n && !removed; ++v) {
      if (gone[v]) continue;
      bool simplicial = true;
      for (std::size_t a = 0; a < n && simplicial; ++a) {
        if (gone[a] || !m[v][a]) continue;
        for (std::size_t b = a + 1; b < n && simplicial; ++b) {
          if (!gone[b] && m[v][b] && !m[a][b]) simplicial = false;
        }
      }
      if (simplicial) {
        gone[v] = true;
        removed = true;
      }
    }
    if (!removed) return false;
  }
  return true;
}

// Path from a to b using no vertex of N[z].
bool path_avoiding(const Matrix& m, std::size_t a, std::size_t b, std::size_t z) {
  const std::size_t n = m.size();
  auto blocked = [&](std::size_t x) { return x == z || m[z][x]; };
  if (blocked(a) || blocked(b)) return false;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{a};
  seen[a] = true;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    if (x == b) return true;
    for (std::size_t y = 0; y < n; ++y) {
      if (m[x][y] && !seen[y] && !blocked(y)) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return false;
}

}  // namespace

bool oracle_is_interval(const Graph& g, const OracleConfig& config) {
  require_small(g.order(), config.max_vertices, "vertex");
  const Matrix m = to_matrix(g);
  if (!chordal_by_elimination(m)) return false;
  const std::size_t n = m.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (path_avoiding(m, a, b, c) && path_avoiding(m, a, c, b) &&
            path_avoiding(m, b, c, a)) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

// dir[u][v] = 1 means u -> v.
class OrientationSearch {
 public:
  explicit OrientationSearch(const Matrix& m) : m_(m), n_(m.size()) {
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t v = u + 1; v < n_; ++v) {
        if (m[u][v]) edges_.emplace_back(u, v);
      }
    }
  }

  bool run() {
    std::vector<std::vector<char>> dir(n_, std::vector<char>(n_, 0));
    return search(dir, 0);
  }

 private:
  bool set(std::vector<std::vector<char>>& dir, std::size_t a, std::size_t b) const {
    std::vector<std::pair<std::size_t, std::size_t>> todo{{a, b}};
    while (!todo.empty()) {
      auto [x, y] = todo.back();
      todo.pop_back();
      if (dir[y][x]) return false;
      if (dir[x][y]) continue;
      dir[x][y] = 1;
      for (std::size_t c = 0; c < n_; ++c) {
        if (c == x || c == y) continue;
        if (dir[y][c]) {  // x -> y -> c
          if (!m_[x][c]) return false;
          todo.emplace_back(x, c);
        }
        if (dir[c][x]) {  // c -> x -> y
          if (!m_[c][y]) return false;
          todo.emplace_back(c, y);
        }
      }
    }
    return true;
  }

  bool search(std::vector<std::vector<char>> dir, std::size_t k) const {
    while (k < edges_.size() && (dir[edges_[k].first][edges_[k].second] ||
                                 dir[edges_[k].second][edges_[k].first])) {
      ++k;
    }
    if (k == edges_.size()) return true;
    auto [u, v] = edges_[k];
    auto forward = dir;
    if (set(forward, u, v) && search(std::move(forward), k + 1)) return true;
    return set(dir, v, u) && search(std::move(dir), k + 1);
  }

  const Matrix& m_;
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

}  // namespace

bool oracle_is_comparability(const Graph& g, const OracleConfig& config) {
  require_small(g.edge_count(), config.orientation_edge_cap, "edge");
  const Matrix m = to_matrix(g);
  return OrientationSearch(m).run();
}

namespace {

bool stable_sets_fit(const Matrix& m, const std::vector<std::int64_t>& width,
                     std::int64_t room) {
  const std::size_t n = m.size();
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::int64_t total = 0;
    bool stable = true;
    for (std::size_t a = 0; a < n && stable; ++a) {
      if (!(mask >> a & 1U)) continue;
      total += width[a];
      for (std::size_t b = a + 1; b < n && stable; ++b) {
        if ((mask >> b & 1U) && m[a][b]) stable = false;
      }
    }
    if (stable && total > room) return false;
  }
  return true;
}

}  // namespace

std::vector<PackingClass> enumerate_packing_classes(const Instance& inst, std::size_t cap,
                                                    const OracleConfig& config) {
  require_small(inst.box_count(), config.max_boxes, "box");
  const std::size_t d = inst.dimensions(), n = inst.box_count();
  if (d > 2) throw Error(ErrorKind::kTooLarge, "oracle class enumeration supports d <= 2");
  const Scaled s = scale_instance(inst);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::vector<PackingClass> out;
  std::vector<Matrix> edges(d, Matrix(n, std::vector<bool>(n, false)));
  std::vector<std::vector<std::int64_t>> width(d, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t b = 0; b < n; ++b) width[i][b] = s.size[b][i];
  }

  auto accept = [&]() {
    for (std::size_t i = 0; i < d; ++i) {
      Graph g(inst.ids());
      for (auto [u, v] : pairs) {
        if (edges[i][u][v]) g.add_edge(u, v);
      }
      if (!oracle_is_interval(g, config)) return;
      if (!stable_sets_fit(edges[i], width[i], s.room[i])) return;
    }
    PackingClass cls;
    for (std::size_t i = 0; i < d; ++i) {
      Graph g(inst.ids());
      for (auto [u, v] : pairs) {
        if (edges[i][u][v]) g.add_edge(u, v);
      }
      cls.edge_sets.push_back(std::move(g));
    }
    out.push_back(std::move(cls));
  };

  // Each pair takes a proper subset of the dimensions (P3); a pair too wide to
  // sit side by side along i must be in E_i.
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (out.size() >= cap) return;
    if (k == pairs.size()) {
      accept();
      return;
    }
    auto [u, v] = pairs[k];
    for (std::uint32_t mask = 0; mask + 1 < (1U << d); ++mask) {
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) {
        const bool in = mask >> i & 1U;
        if (!in && width[i][u] + width[i][v] > s.room[i]) ok = false;
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < d; ++i) {
        const bool in = mask >> i & 1U;
        edges[i][u][v] = edges[i][v][u] = in;
      }
      self(self, k + 1);
    }
    for (std::size_t i = 0; i < d; ++i) edges[i][u][v] = edges[i][v][u] = false;
  };
  recurse(recurse, 0);
  return out;
}

Rational brute_force_okp_value(const Instance& inst, const OracleConfig& config) {
  require_small(inst.box_count(), config.max_boxes, "box");
  const std::size_t n = inst.box_count();
  Rational best(0);
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<Box> chosen;
    Rational value(0);
    for (std::size_t b = 0; b < n; ++b) {
      if (!(mask >> b & 1U)) continue;
      chosen.push_back(inst.box(b));
      Rational volume(1);
      for (const auto& w : inst.box(b).size) volume *= w;
      value += inst.box(b).value.value_or(volume);
    }
    if (value <= best) continue;
    if (brute_force_opp(Instance(chosen, inst.container()), config).feasible) best = value;
  }
  return best;
}

Rational brute_force_min_height(const std::vector<Box>& boxes,
                                const std::vector<Rational>& fixed_dims,
                                const OracleConfig& config) {
  require_small(boxes.size(), config.max_boxes, "box");
  const std::size_t last = fixed_dims.size();
  Rational tallest(0);
  for (const auto& b : boxes) tallest = std::max(tallest, b.size[last]);
  std::set<Rational> heights;
  for (std::uint32_t mask = 0; mask < (1U << boxes.size()); ++mask) {
    Rational h(0);
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      if (mask >> b & 1U) h += boxes[b].size[last];
    }
    if (h >= tallest) heights.insert(h);
  }
  for (const auto& h : heights) {
    std::vector<Rational> container = fixed_dims;
    container.push_back(h);
    if (brute_force_opp(Instance(boxes, container), config).feasible) return h;
  }
  throw Error(ErrorKind::kInvalidInstance, "no candidate height packs the boxes");
}

}  // namespace packclass::oracle
