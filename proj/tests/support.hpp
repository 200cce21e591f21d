#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "packclass/graph.hpp"
#include "packclass/model.hpp"

namespace packclass::testing {

inline std::vector<Rational> dims(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

inline Box box(std::string id, std::initializer_list<std::int64_t> size) {
  return Box{std::move(id), dims(size), std::nullopt};
}

inline std::vector<Box> five_boxes() {
  return {box("b1", {4, 1}), box("b2", {5, 1}), box("b3", {1, 3}), box("b4", {2, 2}),
          box("b5", {1, 2})};
}

inline Instance five_box_instance() { return Instance(five_boxes(), dims({5, 5})); }

// Graph on n vertices whose edge k (in u<v lexicographic order) is present iff
// bit k of mask is set.
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  Graph g = Graph::with_order(n);
  std::size_t k = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v, ++k) {
      if (mask >> k & 1U) g.add_edge(u, v);
    }
  }
  return g;
}

inline Graph cycle(std::size_t n) {
  Graph g = Graph::with_order(n);
  for (std::size_t k = 0; k < n; ++k) g.add_edge(k, (k + 1) % n);
  return g;
}

inline Graph complete(std::size_t n) {
  Graph g = Graph::with_order(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

// Random 2-D instance with n in [1, max_n] boxes and integer sizes in
// [1, max_size] per axis.
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_n,
                                std::int64_t max_size, std::vector<Rational> container) {
  std::uniform_int_distribution<std::size_t> count(1, max_n);
  std::uniform_int_distribution<std::int64_t> side(1, max_size);
  const std::size_t n = count(rng);
  std::vector<Box> boxes;
  for (std::size_t b = 0; b < n; ++b) {
    boxes.push_back(Box{"b" + std::to_string(b + 1), {Rational(side(rng)), Rational(side(rng))},
                        std::nullopt});
  }
  return Instance(std::move(boxes), std::move(container));
}

// Every 2-D instance with n boxes of sizes in {1..max_size}^2, as ordered tuples.
template <typename F>
void for_each_sweep_instance(std::size_t n, std::int64_t max_size,
                             const std::vector<Rational>& container, F&& f) {
  const std::int64_t kinds = max_size * max_size;
  std::vector<std::int64_t> pick(n, 0);
  while (true) {
    std::vector<Box> boxes;
    for (std::size_t b = 0; b < n; ++b) {
      boxes.push_back(Box{"b" + std::to_string(b + 1),
                          {Rational(pick[b] / max_size + 1), Rational(pick[b] % max_size + 1)},
                          std::nullopt});
    }
    f(Instance(std::move(boxes), container));
    std::size_t k = 0;
    while (k < n && ++pick[k] == kinds) pick[k++] = 0;
    if (k == n) return;
  }
}

}  // namespace packclass::testing
