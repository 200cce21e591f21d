#include "packclass/opp.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "packclass/errors.hpp"
#include "packclass/graph.hpp"
#include "packclass/packing_class.hpp"

namespace packclass {

const char* to_string(PruneRule rule) {
  switch (rule) {
    case PruneRule::kP3: return "p3";
    case PruneRule::kInducedC4: return "induced_c4";
    case PruneRule::kOddCycle: return "odd_cycle";
    case PruneRule::kInfeasibleClique: return "infeasible_clique";
    case PruneRule::kCliqueBound: return "clique_bound";
    case PruneRule::kLeafCheck: return "leaf_check";
    case PruneRule::kContradiction: return "contradiction";
  }
  return "unknown";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kFeasible: return "feasible";
    case Verdict::kInfeasible: return "infeasible";
    case Verdict::kResourceLimit: return "resource_limit";
  }
  return "unknown";
}

bool SearchStats::same_counts(const SearchStats& o) const {
  return nodes == o.nodes && decisions == o.decisions && forced == o.forced &&
         prunes == o.prunes && heuristic_hit == o.heuristic_hit &&
         quick_infeasible_hit == o.quick_infeasible_hit;
}

EdgeState::EdgeState(const Instance& inst)
    : inst_(&inst),
      n_(inst.box_count()),
      plus_(inst.dimensions(), std::vector<VertexSet>(n_, VertexSet(n_))),
      minus_(inst.dimensions(), std::vector<VertexSet>(n_, VertexSet(n_))),
      undecided_(inst.dimensions() * n_ * (n_ == 0 ? 0 : n_ - 1) / 2) {}

Sign EdgeState::sign(std::size_t i, std::size_t u, std::size_t v) const {
  if (plus_[i][u].test(v)) return Sign::kPlus;
  if (minus_[i][u].test(v)) return Sign::kMinus;
  return Sign::kUndecided;
}

std::vector<Decision> EdgeState::undecided() const {
  std::vector<Decision> out;
  for (std::size_t i = 0; i < dimensions(); ++i) {
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t v = u + 1; v < n_; ++v) {
        if (sign(i, u, v) == Sign::kUndecided) out.push_back({i, u, v, Sign::kUndecided});
      }
    }
  }
  return out;
}

void EdgeState::assign(const Decision& d) {
  if (d.sign == Sign::kUndecided || sign(d.dimension, d.u, d.v) != Sign::kUndecided) {
    throw std::logic_error("EdgeState::assign on a decided pair");
  }
  auto& rows = d.sign == Sign::kPlus ? plus_[d.dimension] : minus_[d.dimension];
  rows[d.u].set(d.v);
  rows[d.v].set(d.u);
  trail_.push_back(d);
  --undecided_;
}

void EdgeState::undo_to(std::size_t mark) {
  while (trail_.size() > mark) {
    const Decision d = trail_.back();
    trail_.pop_back();
    auto& rows = d.sign == Sign::kPlus ? plus_[d.dimension] : minus_[d.dimension];
    rows[d.u].reset(d.v);
    rows[d.v].reset(d.u);
    ++undecided_;
  }
}

PackingClass EdgeState::plus_class() const {
  PackingClass cls;
  for (std::size_t i = 0; i < dimensions(); ++i) {
    Graph g(inst_->ids());
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t v = plus_[i][u].next(u + 1); v < n_; v = plus_[i][u].next(v + 1)) {
        g.add_edge(u, v);
      }
    }
    cls.edge_sets.push_back(std::move(g));
  }
  return cls;
}

namespace {

Decision make_decision(std::size_t i, std::size_t a, std::size_t b, Sign s) {
  return a < b ? Decision{i, a, b, s} : Decision{i, b, a, s};
}

Sign opposite(Sign s) { return s == Sign::kPlus ? Sign::kMinus : Sign::kPlus; }

class Propagator {
 public:
  explicit Propagator(EdgeState& state) : state_(state) {}

  std::variant<Consequences, Conflict> run(const Decision& decision) {
    apply(decision, PruneRule::kContradiction);
    while (!queue_.empty() && !conflict_) {
      const Decision d = queue_.front();
      queue_.pop_front();
      p3_closure(d);
      if (!conflict_) c4_rules(d);
      if (!conflict_ && d.sign == Sign::kMinus) wide_clique(d);
    }
    if (conflict_) return *conflict_;
    return std::move(out_);
  }

 private:
  void fail(PruneRule rule, std::size_t i, std::vector<std::size_t> cert) {
    if (!conflict_) conflict_ = Conflict{{rule, i, std::move(cert)}};
  }

  // `rule` names the forcing rule, reported if the pair is already opposite.
  void apply(const Decision& d, PruneRule rule, std::vector<std::size_t> cert = {}) {
    const Sign current = state_.sign(d.dimension, d.u, d.v);
    if (current == d.sign) return;
    if (current != Sign::kUndecided) {
      if (cert.empty()) cert = {d.u, d.v};
      fail(rule, d.dimension, std::move(cert));
      return;
    }
    state_.assign(d);
    out_.push_back(d);
    queue_.push_back(d);
  }

  void p3_closure(const Decision& d) {
    const std::size_t dims = state_.dimensions();
    std::size_t plus_count = 0;
    std::size_t open_dim = dims;
    bool has_minus = false;
    for (std::size_t j = 0; j < dims; ++j) {
      const Sign s = state_.sign(j, d.u, d.v);
      if (s == Sign::kPlus) ++plus_count;
      if (s == Sign::kMinus) has_minus = true;
      if (s == Sign::kUndecided) open_dim = j;
    }
    if (plus_count == dims) {
      fail(PruneRule::kP3, d.dimension, {d.u, d.v});
    } else if (plus_count + 1 == dims && !has_minus && open_dim < dims) {
      apply({open_dim, d.u, d.v, Sign::kMinus}, PruneRule::kP3);
    }
  }

  // Nogood: cycle pairs all in E+ and both diagonals in E- (an induced C4).
  void check_pattern(std::size_t i, const std::array<std::size_t, 4>& c) {
    const std::array<VertexPair, 6> pairs = {VertexPair{c[0], c[1]}, VertexPair{c[1], c[2]},
                                             VertexPair{c[2], c[3]}, VertexPair{c[3], c[0]},
                                             VertexPair{c[0], c[2]}, VertexPair{c[1], c[3]}};
    std::size_t satisfied = 0, open = 6;
    for (std::size_t k = 0; k < 6; ++k) {
      const Sign want = k < 4 ? Sign::kPlus : Sign::kMinus;
      const Sign s = state_.sign(i, pairs[k].first, pairs[k].second);
      if (s == want) {
        ++satisfied;
      } else if (s == Sign::kUndecided) {
        if (open != 6) return;
        open = k;
      } else {
        return;
      }
    }
    std::vector<std::size_t> cert(c.begin(), c.end());
    if (satisfied == 6) {
      fail(PruneRule::kInducedC4, i, std::move(cert));
    } else if (satisfied == 5) {
      const Sign want = open < 4 ? Sign::kPlus : Sign::kMinus;
      apply(make_decision(i, pairs[open].first, pairs[open].second, opposite(want)),
            PruneRule::kInducedC4, std::move(cert));
    }
  }

  void c4_rules(const Decision& d) {
    const std::size_t n = state_.box_count();
    const std::size_t u = d.u, v = d.v, i = d.dimension;
    for (std::size_t x = 0; x < n && !conflict_; ++x) {
      if (x == u || x == v) continue;
      for (std::size_t y = x + 1; y < n && !conflict_; ++y) {
        if (y == u || y == v) continue;
        if (d.sign == Sign::kPlus) {
          check_pattern(i, {u, v, x, y});
          if (!conflict_) check_pattern(i, {u, v, y, x});
        } else {
          check_pattern(i, {u, x, v, y});
        }
      }
    }
  }

  // Boxes pairwise separated in dimension i must fit side by side.
  void wide_clique(const Decision& d) {
    const Instance& inst = state_.instance();
    const std::size_t i = d.dimension;
    const auto& minus = state_.minus(i);
    const auto& widths = inst.widths(i);
    const VertexSet common = minus[d.u] & minus[d.v];
    const std::int64_t base = widths[d.u] + widths[d.v];
    std::int64_t total = base;
    for (auto b : common.members()) total += widths[b];
    if (total <= inst.capacity(i)) return;
    auto clique = max_weight_clique(minus, common, widths);
    if (base + clique.weight > inst.capacity(i)) {
      clique.vertices.push_back(d.u);
      clique.vertices.push_back(d.v);
      std::sort(clique.vertices.begin(), clique.vertices.end());
      fail(PruneRule::kInfeasibleClique, i, std::move(clique.vertices));
    }
  }

  EdgeState& state_;
  std::deque<Decision> queue_;
  Consequences out_;
  std::optional<Conflict> conflict_;
};

}  // namespace

std::variant<Consequences, Conflict> propagate(EdgeState& state, const Decision& decision) {
  return Propagator(state).run(decision);
}

std::variant<EdgeState, ImmediateConflict> initial_state(const Instance& inst) {
  EdgeState state(inst);
  const std::size_t n = inst.box_count();
  for (std::size_t i = 0; i < inst.dimensions(); ++i) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (inst.width(u, i) + inst.width(v, i) <= inst.capacity(i)) continue;
        auto result = propagate(state, {i, u, v, Sign::kPlus});
        if (auto* c = std::get_if<Conflict>(&result)) return ImmediateConflict{c->reason};
      }
    }
  }
  return state;
}

namespace {

std::optional<PruneReason> full_c4(const EdgeState& state, std::size_t i) {
  const std::size_t n = state.box_count();
  const auto& plus = state.plus(i);
  const auto& minus = state.minus(i);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = plus[u].first(); v < n; v = plus[u].next(v + 1)) {
      const VertexSet xs = plus[u] & minus[v];
      for (std::size_t x = xs.first(); x < n; x = xs.next(x + 1)) {
        const VertexSet ys = plus[v] & plus[x] & minus[u];
        const std::size_t y = ys.first();
        if (y < n) return PruneReason{PruneRule::kInducedC4, i, {u, v, y, x}};
      }
    }
  }
  return std::nullopt;
}

std::optional<PruneReason> clique_bound(const EdgeState& state, std::size_t i) {
  // Greedily grow sets S whose pairs are all decided in dimension i and test
  // whether E+_i[S] still has room for ceil(w_i(S) / W_i) overlapping boxes.
  const Instance& inst = state.instance();
  const std::size_t n = state.box_count();
  const auto& plus = state.plus(i);
  const auto& minus = state.minus(i);
  const auto& widths = inst.widths(i);
  const std::vector<std::int64_t> unit(n, 1);
  for (std::size_t seed = 0; seed < n; ++seed) {
    VertexSet s(n);
    s.set(seed);
    VertexSet open = plus[seed] | minus[seed];
    std::int64_t total = widths[seed];
    while (open.any()) {
      std::size_t pick = n;
      for (std::size_t b = open.first(); b < n; b = open.next(b + 1)) {
        if (pick == n || widths[b] > widths[pick]) pick = b;
      }
      s.set(pick);
      total += widths[pick];
      open &= plus[pick] | minus[pick];
      const std::int64_t needed = ceil_div(total, inst.capacity(i));
      if (needed <= 1) continue;
      const auto clique = max_weight_clique(plus, s, unit);
      if (clique.weight < needed) {
        return PruneReason{PruneRule::kCliqueBound, i, s.members()};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PruneReason> prune_check(const EdgeState& state) {
  const Instance& inst = state.instance();
  const std::size_t n = state.box_count();
  for (std::size_t i = 0; i < state.dimensions(); ++i) {
    if (auto r = full_c4(state, i)) return r;
    if (auto walk = find_odd_2chordless_cycle(state.minus(i), state.plus(i))) {
      return PruneReason{PruneRule::kOddCycle, i, std::move(*walk)};
    }
    const auto& minus = state.minus(i);
    const WeightedSet wide =
        n <= kDefaultCliqueCap
            ? max_weight_clique(minus, VertexSet::full(n), inst.widths(i))
            : greedy_weight_clique(minus, VertexSet::full(n), inst.widths(i));
    if (wide.weight > inst.capacity(i)) {
      return PruneReason{PruneRule::kInfeasibleClique, i, wide.vertices};
    }
    if (auto r = clique_bound(state, i)) return r;
  }
  return std::nullopt;
}

Decision branch_select(const EdgeState& state) {
  if (state.undecided_count() == 0) {
    throw Error(ErrorKind::kNoUndecided, "every pair is decided");
  }
  const std::size_t n = state.box_count(), dims = state.dimensions();
  std::vector<std::vector<std::size_t>> decided(dims, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < dims; ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      decided[i][v] = (state.plus(i)[v] | state.minus(i)[v]).count();
    }
  }
  Decision best{};
  std::size_t best_score = 0;
  bool have = false;
  for (std::size_t i = 0; i < dims; ++i) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (state.sign(i, u, v) != Sign::kUndecided) continue;
        std::size_t score = decided[i][u] + decided[i][v];
        for (std::size_t j = 0; j < dims; ++j) {
          if (state.sign(j, u, v) != Sign::kUndecided) ++score;
        }
        if (!have || score > best_score) {
          best = {i, u, v, Sign::kPlus};
          best_score = score;
          have = true;
        }
      }
    }
  }
  return best;
}

namespace {

class Search {
 public:
  Search(EdgeState& state, const SearchLimits& limits, const SearchOptions& options,
         SearchStats& stats, std::chrono::steady_clock::time_point start)
      : state_(state), limits_(limits), options_(options), stats_(stats), start_(start) {}

  bool run() { return dfs(0); }
  bool hit_limit() const { return hit_limit_; }

 private:
  bool out_of_budget() {
    if (stats_.nodes >= limits_.max_nodes) return true;
    if ((stats_.nodes & 255U) == 0 &&
        std::chrono::steady_clock::now() - start_ > limits_.max_time) {
      return true;
    }
    return false;
  }

  bool dfs(std::size_t since_check) {
    if (out_of_budget()) {
      hit_limit_ = true;
      return false;
    }
    ++stats_.nodes;
    if (state_.undecided_count() == 0) {
      if (verify_packing_class(state_.plus_class(), state_.instance()).all_ok()) return true;
      ++stats_.prunes[static_cast<std::size_t>(PruneRule::kLeafCheck)];
      return false;
    }
    if (since_check >= options_.full_check_interval) {
      if (auto reason = prune_check(state_)) {
        ++stats_.prunes[static_cast<std::size_t>(reason->rule)];
        return false;
      }
      since_check = 0;
    }
    const Decision pick = branch_select(state_);
    for (Sign s : {pick.sign, opposite(pick.sign)}) {
      const std::size_t mark = state_.trail_size();
      ++stats_.decisions;
      auto result = propagate(state_, {pick.dimension, pick.u, pick.v, s});
      if (auto* c = std::get_if<Conflict>(&result)) {
        ++stats_.prunes[static_cast<std::size_t>(c->reason.rule)];
      } else {
        stats_.forced += std::get<Consequences>(result).size() - 1;
        if (dfs(since_check + 1)) return true;
        if (hit_limit_) return false;
      }
      state_.undo_to(mark);
    }
    return false;
  }

  EdgeState& state_;
  const SearchLimits& limits_;
  const SearchOptions& options_;
  SearchStats& stats_;
  std::chrono::steady_clock::time_point start_;
  bool hit_limit_ = false;
};

void require_sound(const Packing& p, const Instance& inst) {
  const auto report = validate_packing(p, inst);
  if (!report.valid || p.positions.size() != inst.box_count()) {
    throw std::logic_error("solver produced an invalid packing");
  }
}

}  // namespace

SearchOutcome solve_opp(const Instance& inst, const SearchLimits& limits,
                        const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SearchOutcome outcome;
  auto finish = [&](Verdict v) {
    outcome.verdict = v;
    outcome.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v == Verdict::kFeasible) require_sound(*outcome.packing, inst);
    return outcome;
  };

  if (options.use_quick_infeasible &&
      quick_infeasible(inst, VertexSet::full(inst.box_count()))) {
    outcome.stats.quick_infeasible_hit = true;
    return finish(Verdict::kInfeasible);
  }
  if (options.use_heuristic) {
    if (auto p = heuristic_pack(inst)) {
      outcome.stats.heuristic_hit = true;
      outcome.cls = project_to_class(*p, inst);
      outcome.packing = std::move(p);
      return finish(Verdict::kFeasible);
    }
  }

  auto init = initial_state(inst);
  if (auto* c = std::get_if<ImmediateConflict>(&init)) {
    ++outcome.stats.prunes[static_cast<std::size_t>(c->reason.rule)];
    return finish(Verdict::kInfeasible);
  }
  EdgeState& state = std::get<EdgeState>(init);
  outcome.stats.forced = state.trail_size();
  Search search(state, limits, options, outcome.stats, start);
  if (search.run()) {
    PackingClass cls = state.plus_class();
    outcome.packing = extract_packing(orient_class(cls, inst), inst);
    outcome.cls = std::move(cls);
    return finish(Verdict::kFeasible);
  }
  return finish(search.hit_limit() ? Verdict::kResourceLimit : Verdict::kInfeasible);
}

std::optional<Packing> heuristic_pack(const Instance& inst) {
  const std::size_t n = inst.box_count(), d = inst.dimensions();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.volume(a) > inst.volume(b);
  });

  std::vector<std::vector<std::int64_t>> coords(n, std::vector<std::int64_t>(d, 0));
  std::vector<std::size_t> placed;
  for (std::size_t b : order) {
    // Candidate coordinates: 0 and every upper face of a placed box.
    std::vector<std::vector<std::int64_t>> cand(d);
    for (std::size_t i = 0; i < d; ++i) {
      cand[i].push_back(0);
      for (std::size_t c : placed) cand[i].push_back(coords[c][i] + inst.width(c, i));
      std::sort(cand[i].begin(), cand[i].end());
      cand[i].erase(std::unique(cand[i].begin(), cand[i].end()), cand[i].end());
      std::erase_if(cand[i], [&](std::int64_t p) {
        return p + inst.width(b, i) > inst.capacity(i);
      });
    }
    // Odometer over the candidates, last dimension most significant.
    std::vector<std::size_t> pick(d, 0);
    bool found = false;
    while (!found) {
      std::vector<std::int64_t> pos(d);
      for (std::size_t i = 0; i < d; ++i) pos[i] = cand[i][pick[i]];
      bool clear = true;
      for (std::size_t c : placed) {
        bool overlap = true;
        for (std::size_t i = 0; i < d && overlap; ++i) {
          overlap = pos[i] < coords[c][i] + inst.width(c, i) &&
                    coords[c][i] < pos[i] + inst.width(b, i);
        }
        if (overlap) {
          clear = false;
          break;
        }
      }
      if (clear) {
        coords[b] = pos;
        found = true;
        break;
      }
      std::size_t i = 0;
      while (i < d && ++pick[i] == cand[i].size()) pick[i++] = 0;
      if (i == d) break;
    }
    if (!found) return std::nullopt;
    placed.push_back(b);
  }
  std::sort(placed.begin(), placed.end());
  return packing_from_scaled(inst, coords, placed);
}

bool quick_infeasible(const Instance& inst, const VertexSet& subset) {
  Rational volume(0);
  const auto members = subset.members();
  for (auto b : members) volume += inst.volume(b);
  if (volume > inst.container_volume()) return true;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t c = a + 1; c < members.size(); ++c) {
      bool collide = true;
      for (std::size_t i = 0; i < inst.dimensions() && collide; ++i) {
        collide = inst.width(members[a], i) + inst.width(members[c], i) > inst.capacity(i);
      }
      if (collide) return true;
    }
  }
  return false;
}

SearchLimits default_limits() {
  SearchLimits limits;
  if (const char* env = std::getenv("PACKCLASS_TIME_LIMIT")) {
    char* end = nullptr;
    const double seconds = std::strtod(env, &end);
    if (end != env && seconds > 0) limits.max_time = std::chrono::duration<double>(seconds);
  }
  return limits;
}

}  // namespace packclass
