#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "packclass/chargraph.hpp"
#include "packclass/graph.hpp"
#include "packclass/model.hpp"

namespace packclass {

struct IntervalVerdict {
  bool ok = true;
  std::optional<IntervalWitness> witness;
};

struct StableSetVerdict {
  bool ok = true;
  // Heaviest stable set, in instance-scaled units; overweight when !ok.
  WeightedSet heaviest;
};

struct ClassReport {
  std::vector<IntervalVerdict> p1;    // per dimension
  std::vector<StableSetVerdict> p2;   // per dimension
  bool p3_ok = true;
  std::optional<VertexPair> p3_shared;  // a pair present in every edge set

  bool all_ok() const;
};

// Checks the edge sets against the three packing-class conditions.
// Graphs may list the boxes in any order; they are matched by id.
// Throws Error(kUnknownVertex) if a graph's vertex list is not exactly the
// instance's box set, Error(kDimensionMismatch) on a wrong number of graphs.
ClassReport verify_packing_class(const PackingClass& cls, const Instance& inst);

// F_i is a transitive orientation of the complement of G_i.
struct Orientation {
  std::vector<Dag> dags;
};

// Throws Error(kNotPackingClass) when verification fails.
Orientation orient_class(const PackingClass& cls, const Instance& inst);

// Longest-path placement: a box sits at the largest upper face of its
// predecessors in each dimension. Throws Error(kCyclicOrientation).
Packing extract_packing(const Orientation& orientation, const Instance& inst);

// Integer-scaled coordinates per box (instance order) for the same placement.
std::vector<std::vector<std::int64_t>> extract_scaled(const Orientation& orientation,
                                                      const Instance& inst);

// True iff the largest clique of G_i[subset] has at least
// ceil(sum of widths / W_i) vertices.
bool clique_bound_holds(const PackingClass& cls, const VertexSet& subset,
                        std::size_t i, const Instance& inst);

struct ClassOrientations {
  std::vector<std::size_t> per_dimension;  // exact counts
  std::vector<Orientation> orientations;   // cartesian product, first `cap`
};

// Every transitive orientation of the class, dimension by dimension.
ClassOrientations enumerate_class_orientations(const PackingClass& cls, std::size_t cap);

}  // namespace packclass
