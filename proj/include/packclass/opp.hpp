#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "packclass/model.hpp"
#include "packclass/vertex_set.hpp"

namespace packclass {

enum class Sign : std::uint8_t { kUndecided, kPlus, kMinus };

struct Decision {
  std::size_t dimension;
  std::size_t u;  // u < v
  std::size_t v;
  Sign sign;

  friend bool operator==(const Decision&, const Decision&) = default;
};

enum class PruneRule {
  kP3,                // a pair would overlap in every dimension
  kInducedC4,         // induced C4 in (V, E+_i)
  kOddCycle,          // odd 2-chordless cycle in (V, E-_i)
  kInfeasibleClique,  // clique of (V, E-_i) wider than W_i
  kCliqueBound,       // decided set S with too small a clique in E+_i[S]
  kLeafCheck,         // complete assignment rejected by full verification
  kContradiction,     // decision opposes an existing assignment
};
inline constexpr std::size_t kPruneRuleCount = 7;
const char* to_string(PruneRule rule);

struct PruneReason {
  PruneRule rule;
  std::size_t dimension = 0;
  // Vertices of the witness: the pair (P3), the cycle a-b-c-d (C4), the
  // closed walk (odd cycle), the clique, or the set S (clique bound).
  std::vector<std::size_t> certificate;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t decisions = 0;
  std::uint64_t forced = 0;
  std::array<std::uint64_t, kPruneRuleCount> prunes{};
  double seconds = 0.0;
  bool heuristic_hit = false;
  bool quick_infeasible_hit = false;

  // Everything except wall time.
  bool same_counts(const SearchStats& o) const;
};

// Partial assignment of every box pair to E+_i / E-_i per dimension, with a
// trail for chronological backtracking.
class EdgeState {
 public:
  explicit EdgeState(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  std::size_t dimensions() const { return plus_.size(); }
  std::size_t box_count() const { return n_; }

  Sign sign(std::size_t i, std::size_t u, std::size_t v) const;
  const std::vector<VertexSet>& plus(std::size_t i) const { return plus_[i]; }
  const std::vector<VertexSet>& minus(std::size_t i) const { return minus_[i]; }

  std::size_t undecided_count() const { return undecided_; }
  std::vector<Decision> undecided() const;

  // Records the assignment on the trail. The pair must be undecided in i.
  void assign(const Decision& d);
  std::size_t trail_size() const { return trail_.size(); }
  const std::vector<Decision>& trail() const { return trail_; }
  void undo_to(std::size_t mark);

  // E+ as a packing class over all boxes.
  PackingClass plus_class() const;

 private:
  const Instance* inst_;
  std::size_t n_;
  std::vector<std::vector<VertexSet>> plus_;
  std::vector<std::vector<VertexSet>> minus_;
  std::vector<Decision> trail_;
  std::size_t undecided_;
};

struct ImmediateConflict {
  PruneReason reason;
};

// Pairwise widths beyond W_i force E+_i, then everything that follows.
std::variant<EdgeState, ImmediateConflict> initial_state(const Instance& inst);

struct Conflict {
  PruneReason reason;
};

// Assignments made during one propagation, in order (the decision itself
// first unless it was already present).
using Consequences = std::vector<Decision>;

// Applies `decision` and runs the forcing rules (P3 closure, induced-C4
// completion, incremental wide-clique check) to a fixed point. On conflict the
// state keeps the partial assignments; undo with the trail mark.
std::variant<Consequences, Conflict> propagate(EdgeState& state, const Decision& decision);

// Full check of the forbidden-structure rules on the current state.
std::optional<PruneReason> prune_check(const EdgeState& state);

// Undecided pair with the most decided incident relations; ties go to the
// smallest (dimension, u, v). Inclusion is always preferred.
// Throws Error(kNoUndecided).
Decision branch_select(const EdgeState& state);

struct SearchLimits {
  std::uint64_t max_nodes = 10'000'000;
  std::chrono::duration<double> max_time = std::chrono::seconds(60);
};

struct SearchOptions {
  bool use_heuristic = true;
  bool use_quick_infeasible = true;
  std::size_t full_check_interval = 8;
};

enum class Verdict { kFeasible, kInfeasible, kResourceLimit };
const char* to_string(Verdict verdict);

struct SearchOutcome {
  Verdict verdict = Verdict::kResourceLimit;
  std::optional<Packing> packing;       // when feasible
  std::optional<PackingClass> cls;      // when feasible
  SearchStats stats;
};

SearchOutcome solve_opp(const Instance& inst, const SearchLimits& limits = {},
                        const SearchOptions& options = {});

// Bottom-left placement over gapless candidate coordinates. Returns a packing
// of every box or nothing.
std::optional<Packing> heuristic_pack(const Instance& inst);

// Sound screening: volume bound or a pair that collides in every dimension.
bool quick_infeasible(const Instance& inst, const VertexSet& subset);

// Reads PACKCLASS_TIME_LIMIT (seconds) on top of the defaults.
SearchLimits default_limits();

}  // namespace packclass
