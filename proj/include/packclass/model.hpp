#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "packclass/graph.hpp"
#include "packclass/rational.hpp"
#include "packclass/vertex_set.hpp"

namespace packclass {

struct Box {
  std::string id;
  std::vector<Rational> size;
  // Defaults to the box volume when absent.
  std::optional<Rational> value;
};

// Boxes with exact sizes inside a container. Construction validates every
// invariant and precomputes a per-dimension integer rescaling so the solvers
// work on integers only.
class Instance {
 public:
  // Throws Error(kInvalidInstance) on any violated invariant, including a box
  // that does not fit the container on its own.
  Instance(std::vector<Box> boxes, std::vector<Rational> container);

  std::size_t dimensions() const { return container_.size(); }
  std::size_t box_count() const { return boxes_.size(); }
  const std::vector<Box>& boxes() const { return boxes_; }
  const Box& box(std::size_t b) const { return boxes_[b]; }
  const std::vector<Rational>& container() const { return container_; }
  std::vector<std::string> ids() const;
  // Throws Error(kUnknownBox).
  std::size_t index_of(const std::string& id) const;

  Rational value(std::size_t b) const;
  Rational volume(std::size_t b) const;
  Rational container_volume() const;

  // Integer view: size(b, i) * scale(i) and container(i) * scale(i).
  std::int64_t scale(std::size_t i) const { return scale_[i]; }
  std::int64_t width(std::size_t b, std::size_t i) const { return widths_[i][b]; }
  std::int64_t capacity(std::size_t i) const { return capacity_[i]; }
  // All box widths along dimension i, indexed by box.
  const std::vector<std::int64_t>& widths(std::size_t i) const { return widths_[i]; }

  // Same boxes in a different container (keeps ids and values).
  Instance with_container(std::vector<Rational> container) const;
  // Restriction to the given boxes, in ascending index order.
  Instance subset(const VertexSet& boxes) const;

 private:
  std::vector<Box> boxes_;
  std::vector<Rational> container_;
  std::vector<std::int64_t> scale_;
  std::vector<std::vector<std::int64_t>> widths_;
  std::vector<std::int64_t> capacity_;
};

// Box id -> lower corner. May cover only a subset of the instance.
struct Packing {
  std::map<std::string, std::vector<Rational>> positions;
};

struct Violation {
  enum class Kind { kClosedness, kOverlap };
  Kind kind;
  std::string box;
  std::string other;           // overlap partner
  std::size_t dimension = 0;   // closedness axis, 0-based
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

// Throws Error(kUnknownBox) / Error(kDimensionMismatch) for malformed input.
ValidationReport validate_packing(const Packing& p, const Instance& inst);

// Sum of widths along dimension i (0-based) fits the container.
bool xi_feasible(const std::vector<std::string>& boxes, std::size_t i, const Instance& inst);
bool xi_feasible(const VertexSet& boxes, std::size_t i, const Instance& inst);

struct PackingClass {
  // One overlap graph per dimension over the instance's boxes (or the packed
  // subset, in instance order).
  std::vector<Graph> edge_sets;
};

// Overlap graphs of a valid packing. Throws Error(kInvalidPacking).
PackingClass project_to_class(const Packing& p, const Instance& inst);

// Throws Error(kInvalidPacking).
bool is_gapless(const Packing& p, const Instance& inst);

// Integer-scaled coordinates (instance index order) back to a Packing.
Packing packing_from_scaled(const Instance& inst,
                            const std::vector<std::vector<std::int64_t>>& coords,
                            const std::vector<std::size_t>& boxes);

}  // namespace packclass
