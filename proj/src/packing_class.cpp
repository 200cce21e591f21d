#include "packclass/packing_class.hpp"

#include <algorithm>
#include <stdexcept>

#include "packclass/errors.hpp"

namespace packclass {

bool ClassReport::all_ok() const {
  if (!p3_ok) return false;
  for (const auto& v : p1) {
    if (!v.ok) return false;
  }
  for (const auto& v : p2) {
    if (!v.ok) return false;
  }
  return true;
}

namespace {

// Re-indexes a class graph into instance box order.
Graph align_to_instance(const Graph& g, const Instance& inst) {
  if (g.order() != inst.box_count()) {
    throw Error(ErrorKind::kUnknownVertex,
                "edge set covers " + std::to_string(g.order()) + " vertices, instance has " +
                    std::to_string(inst.box_count()) + " boxes");
  }
  std::vector<std::size_t> to_box(g.order());
  bool identity = true;
  for (std::size_t v = 0; v < g.order(); ++v) {
    try {
      to_box[v] = inst.index_of(g.id(v));
    } catch (const Error&) {
      throw Error(ErrorKind::kUnknownVertex, "no box '" + g.id(v) + "'");
    }
    identity = identity && to_box[v] == v;
  }
  if (identity) return g;
  Graph out(inst.ids());
  for (auto [u, v] : g.edges()) out.add_edge(to_box[u], to_box[v]);
  return out;
}

}  // namespace

ClassReport verify_packing_class(const PackingClass& cls, const Instance& inst) {
  const std::size_t d = inst.dimensions();
  if (cls.edge_sets.size() != d) {
    throw Error(ErrorKind::kDimensionMismatch,
                "expected " + std::to_string(d) + " edge sets, got " +
                    std::to_string(cls.edge_sets.size()));
  }
  std::vector<Graph> graphs;
  for (const auto& g : cls.edge_sets) graphs.push_back(align_to_instance(g, inst));

  ClassReport report;
  const std::size_t n = inst.box_count();
  for (std::size_t i = 0; i < d; ++i) {
    const Graph& g = graphs[i];
    auto interval = is_interval_graph(g);
    report.p1.push_back({interval.interval, std::move(interval.witness)});

    StableSetVerdict p2;
    if (interval.interval) {
      auto orientation = transitive_orientation(complement(g));
      p2.heaviest = max_weight_chain(*orientation.dag, inst.widths(i));
    } else if (n <= kDefaultCliqueCap) {
      p2.heaviest = max_weight_clique(complement(g), inst.widths(i));
    } else {
      Graph co = complement(g);
      p2.heaviest = greedy_weight_clique(co.adjacency(), VertexSet::full(n), inst.widths(i));
    }
    p2.ok = p2.heaviest.weight <= inst.capacity(i);
    report.p2.push_back(std::move(p2));
  }

  for (std::size_t u = 0; u < n && report.p3_ok; ++u) {
    VertexSet common = VertexSet::full(n);
    for (const auto& g : graphs) common &= g.neighbors(u);
    const std::size_t v = common.next(u + 1);
    if (v < n) {
      report.p3_ok = false;
      report.p3_shared = VertexPair{u, v};
    }
  }
  return report;
}

Orientation orient_class(const PackingClass& cls, const Instance& inst) {
  if (!verify_packing_class(cls, inst).all_ok()) {
    throw Error(ErrorKind::kNotPackingClass, "edge sets do not form a packing class");
  }
  Orientation out;
  for (const auto& g : cls.edge_sets) {
    auto result = transitive_orientation(complement(align_to_instance(g, inst)));
    if (!result.ok()) {
      throw std::logic_error("complement of an interval graph must be orientable");
    }
    out.dags.push_back(std::move(*result.dag));
  }
  return out;
}

std::vector<std::vector<std::int64_t>> extract_scaled(const Orientation& orientation,
                                                      const Instance& inst) {
  const std::size_t n = inst.box_count();
  std::vector<std::vector<std::int64_t>> coords(n, std::vector<std::int64_t>(inst.dimensions(), 0));
  for (std::size_t i = 0; i < orientation.dags.size(); ++i) {
    const Dag& dag = orientation.dags[i];
    for (std::size_t u : dag.topological_order()) {
      const VertexSet& next = dag.successors(u);
      const std::int64_t top = coords[u][i] + inst.width(u, i);
      for (std::size_t v = next.first(); v < n; v = next.next(v + 1)) {
        coords[v][i] = std::max(coords[v][i], top);
      }
    }
  }
  return coords;
}

Packing extract_packing(const Orientation& orientation, const Instance& inst) {
  if (orientation.dags.size() != inst.dimensions()) {
    throw Error(ErrorKind::kDimensionMismatch, "one orientation per dimension is required");
  }
  std::vector<std::size_t> all(inst.box_count());
  for (std::size_t b = 0; b < all.size(); ++b) all[b] = b;
  return packing_from_scaled(inst, extract_scaled(orientation, inst), all);
}

bool clique_bound_holds(const PackingClass& cls, const VertexSet& subset, std::size_t i,
                        const Instance& inst) {
  if (i >= inst.dimensions()) {
    throw Error(ErrorKind::kDimensionOutOfRange, "dimension out of range");
  }
  const Graph g = align_to_instance(cls.edge_sets.at(i), inst);
  std::int64_t total = 0;
  for (auto b : subset.members()) total += inst.width(b, i);
  const std::int64_t needed = ceil_div(total, inst.capacity(i));
  const std::vector<std::int64_t> unit(g.order(), 1);
  const auto clique = max_weight_clique(g.adjacency(), subset, unit);
  return static_cast<std::int64_t>(clique.vertices.size()) >= needed;
}

ClassOrientations enumerate_class_orientations(const PackingClass& cls, std::size_t cap) {
  ClassOrientations out;
  std::vector<std::vector<Dag>> per_dim;
  for (const auto& g : cls.edge_sets) {
    auto e = enumerate_transitive_orientations(complement(g), SIZE_MAX);
    out.per_dimension.push_back(e.total);
    per_dim.push_back(std::move(e.orientations));
  }
  std::vector<std::size_t> pick(per_dim.size(), 0);
  for (const auto& options : per_dim) {
    if (options.empty()) return out;
  }
  while (out.orientations.size() < cap) {
    Orientation o;
    for (std::size_t i = 0; i < per_dim.size(); ++i) o.dags.push_back(per_dim[i][pick[i]]);
    out.orientations.push_back(std::move(o));
    std::size_t i = per_dim.size();
    while (i > 0) {
      --i;
      if (++pick[i] < per_dim[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (per_dim.empty()) break;
  }
  return out;
}

}  // namespace packclass
