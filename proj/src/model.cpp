#include "packclass/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "packclass/errors.hpp"

namespace packclass {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidInstance, what);
}

}  // namespace

Instance::Instance(std::vector<Box> boxes, std::vector<Rational> container)
    : boxes_(std::move(boxes)), container_(std::move(container)) {
  const std::size_t d = container_.size();
  if (d == 0) invalid("container needs at least one dimension");
  for (std::size_t i = 0; i < d; ++i) {
    if (container_[i] <= 0) invalid("container size must be positive in every dimension");
  }
  std::set<std::string> seen;
  for (const auto& b : boxes_) {
    if (b.id.empty()) invalid("box ids must be non-empty");
    if (!seen.insert(b.id).second) invalid("duplicate box id '" + b.id + "'");
    if (b.size.size() != d) {
      invalid("box '" + b.id + "' has " + std::to_string(b.size.size()) +
              " size components, expected " + std::to_string(d));
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (b.size[i] <= 0) invalid("box '" + b.id + "' has a non-positive size");
      if (b.size[i] > container_[i]) {
        invalid("box '" + b.id + "' does not fit the container in dimension " +
                std::to_string(i + 1));
      }
    }
    if (b.value && *b.value < 0) invalid("box '" + b.id + "' has a negative value");
  }

  scale_.resize(d);
  widths_.assign(d, std::vector<std::int64_t>(boxes_.size()));
  capacity_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t lcm = denominator64(container_[i]);
    for (const auto& b : boxes_) lcm = std::lcm(lcm, denominator64(b.size[i]));
    scale_[i] = lcm;
    capacity_[i] = numerator64(container_[i] * lcm);
    for (std::size_t k = 0; k < boxes_.size(); ++k) {
      widths_[i][k] = numerator64(boxes_[k].size[i] * lcm);
    }
  }
}

std::vector<std::string> Instance::ids() const {
  std::vector<std::string> out;
  out.reserve(boxes_.size());
  for (const auto& b : boxes_) out.push_back(b.id);
  return out;
}

std::size_t Instance::index_of(const std::string& id) const {
  for (std::size_t k = 0; k < boxes_.size(); ++k) {
    if (boxes_[k].id == id) return k;
  }
  throw Error(ErrorKind::kUnknownBox, "no box '" + id + "'");
}

Rational Instance::volume(std::size_t b) const {
  Rational v(1);
  for (const auto& s : boxes_[b].size) v *= s;
  return v;
}

Rational Instance::value(std::size_t b) const {
  return boxes_[b].value ? *boxes_[b].value : volume(b);
}

Rational Instance::container_volume() const {
  Rational v(1);
  for (const auto& s : container_) v *= s;
  return v;
}

Instance Instance::with_container(std::vector<Rational> container) const {
  return Instance(boxes_, std::move(container));
}

Instance Instance::subset(const VertexSet& boxes) const {
  std::vector<Box> kept;
  for (auto b : boxes.members()) kept.push_back(boxes_[b]);
  return Instance(std::move(kept), container_);
}

ValidationReport validate_packing(const Packing& p, const Instance& inst) {
  const std::size_t d = inst.dimensions();
  struct Placed {
    std::size_t box;
    const std::vector<Rational>* pos;
  };
  std::vector<Placed> placed;
  for (const auto& [id, pos] : p.positions) {
    const std::size_t b = inst.index_of(id);
    if (pos.size() != d) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "position of '" + id + "' has " + std::to_string(pos.size()) +
                      " coordinates, expected " + std::to_string(d));
    }
    placed.push_back({b, &pos});
  }
  std::sort(placed.begin(), placed.end(),
            [](const Placed& a, const Placed& b) { return a.box < b.box; });

  ValidationReport report;
  for (const auto& pl : placed) {
    const auto& size = inst.box(pl.box).size;
    for (std::size_t i = 0; i < d; ++i) {
      if ((*pl.pos)[i] < 0 || (*pl.pos)[i] + size[i] > inst.container()[i]) {
        report.violations.push_back(
            {Violation::Kind::kClosedness, inst.box(pl.box).id, {}, i});
      }
    }
  }
  for (std::size_t a = 0; a < placed.size(); ++a) {
    for (std::size_t c = a + 1; c < placed.size(); ++c) {
      const auto& sa = inst.box(placed[a].box).size;
      const auto& sc = inst.box(placed[c].box).size;
      bool overlap_everywhere = true;
      for (std::size_t i = 0; i < d && overlap_everywhere; ++i) {
        const Rational& pa = (*placed[a].pos)[i];
        const Rational& pc = (*placed[c].pos)[i];
        // Half-open intervals [p, p + w) intersect.
        overlap_everywhere = pa < pc + sc[i] && pc < pa + sa[i];
      }
      if (overlap_everywhere) {
        report.violations.push_back({Violation::Kind::kOverlap, inst.box(placed[a].box).id,
                                     inst.box(placed[c].box).id, 0});
      }
    }
  }
  report.valid = report.violations.empty();
  return report;
}

bool xi_feasible(const VertexSet& boxes, std::size_t i, const Instance& inst) {
  if (i >= inst.dimensions()) {
    throw Error(ErrorKind::kDimensionOutOfRange, "dimension " + std::to_string(i + 1) +
                                                     " out of range");
  }
  if (boxes.universe() != inst.box_count()) {
    throw Error(ErrorKind::kUnknownBox, "box subset does not match the instance");
  }
  std::int64_t total = 0;
  for (auto b : boxes.members()) total += inst.width(b, i);
  return total <= inst.capacity(i);
}

bool xi_feasible(const std::vector<std::string>& boxes, std::size_t i, const Instance& inst) {
  VertexSet s(inst.box_count());
  for (const auto& id : boxes) s.set(inst.index_of(id));
  return xi_feasible(s, i, inst);
}

namespace {

void require_valid(const Packing& p, const Instance& inst) {
  const auto report = validate_packing(p, inst);
  if (!report.valid) {
    const auto& v = report.violations.front();
    throw Error(ErrorKind::kInvalidPacking,
                v.kind == Violation::Kind::kOverlap
                    ? "boxes '" + v.box + "' and '" + v.other + "' overlap"
                    : "box '" + v.box + "' leaves the container");
  }
}

}  // namespace

PackingClass project_to_class(const Packing& p, const Instance& inst) {
  require_valid(p, inst);
  std::vector<std::size_t> packed;
  for (const auto& [id, pos] : p.positions) packed.push_back(inst.index_of(id));
  std::sort(packed.begin(), packed.end());
  std::vector<std::string> ids;
  for (auto b : packed) ids.push_back(inst.box(b).id);

  PackingClass cls;
  for (std::size_t i = 0; i < inst.dimensions(); ++i) {
    Graph g(ids);
    for (std::size_t a = 0; a < packed.size(); ++a) {
      for (std::size_t c = a + 1; c < packed.size(); ++c) {
        const Rational& pa = p.positions.at(ids[a])[i];
        const Rational& pc = p.positions.at(ids[c])[i];
        if (pa < pc + inst.box(packed[c]).size[i] && pc < pa + inst.box(packed[a]).size[i]) {
          g.add_edge(a, c);
        }
      }
    }
    cls.edge_sets.push_back(std::move(g));
  }
  return cls;
}

bool is_gapless(const Packing& p, const Instance& inst) {
  require_valid(p, inst);
  for (std::size_t i = 0; i < inst.dimensions(); ++i) {
    std::set<Rational> tops;
    for (const auto& [id, pos] : p.positions) {
      tops.insert(pos[i] + inst.box(inst.index_of(id)).size[i]);
    }
    for (const auto& [id, pos] : p.positions) {
      if (pos[i] != 0 && !tops.contains(pos[i])) return false;
    }
  }
  return true;
}

Packing packing_from_scaled(const Instance& inst,
                            const std::vector<std::vector<std::int64_t>>& coords,
                            const std::vector<std::size_t>& boxes) {
  Packing p;
  for (auto b : boxes) {
    std::vector<Rational> pos;
    for (std::size_t i = 0; i < inst.dimensions(); ++i) {
      pos.emplace_back(coords[b][i], inst.scale(i));
    }
    p.positions.emplace(inst.box(b).id, std::move(pos));
  }
  return p;
}

}  // namespace packclass
