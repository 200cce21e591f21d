#include "packclass/solve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "packclass/errors.hpp"

namespace packclass {

const char* to_string(SolveStatus status) {
  return status == SolveStatus::kOptimal ? "optimal" : "resource_limit";
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::string> ids_of(const Instance& inst, const VertexSet& s) {
  std::vector<std::string> out;
  for (auto b : s.members()) out.push_back(inst.box(b).id);
  return out;
}

void add_stats(SearchStats& into, const SearchStats& from) {
  into.nodes += from.nodes;
  into.decisions += from.decisions;
  into.forced += from.forced;
  for (std::size_t k = 0; k < kPruneRuleCount; ++k) into.prunes[k] += from.prunes[k];
  into.seconds += from.seconds;
}

struct Node {
  Rational bound;
  Rational value;
  std::size_t depth;
  VertexSet included;
  std::uint64_t seq;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

class OkpSearch {
 public:
  OkpSearch(const Instance& inst, const SearchLimits& limits, const SearchOptions& options)
      : inst_(inst), limits_(limits), options_(options), start_(Clock::now()) {
    order_.resize(inst.box_count());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return inst.value(a) > inst.value(b);
    });
  }

  OkpSolution run() {
    const std::size_t n = inst_.box_count();
    seed_incumbent();
    Rational total(0);
    for (std::size_t b = 0; b < n; ++b) total += inst_.value(b);
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    open.push({total, Rational(0), 0, VertexSet(n), seq_++});
    bool exhausted_budget = false;

    while (!open.empty()) {
      Node node = open.top();
      open.pop();
      // The incumbent (initially the empty set) is optimal once no open node
      // can beat it.
      if (node.bound <= best_.value) break;
      if (node.depth == n) {
        if (budget_spent()) {
          exhausted_budget = true;
          break;
        }
        if (decide(node.included) == Verdict::kResourceLimit) exhausted_budget = true;
        continue;
      }
      const std::size_t box = order_[node.depth];
      VertexSet with = node.included;
      with.set(box);
      if (!quick_infeasible(inst_, with) && !known_infeasible(with)) {
        open.push({node.bound, node.value + inst_.value(box), node.depth + 1, with, seq_++});
      } else {
        dismiss(with, "volume_or_pair");
      }
      open.push({node.bound - inst_.value(box), node.value, node.depth + 1, node.included,
                 seq_++});
    }
    best_.status = exhausted_budget ? SolveStatus::kResourceLimit : SolveStatus::kOptimal;
    return std::move(best_);
  }

 private:
  bool budget_spent() const { return Clock::now() - start_ > limits_.max_time; }

  void dismiss(const VertexSet& s, std::string reason) {
    if (best_.dismissed.size() < kMaxDismissed) {
      best_.dismissed.push_back({ids_of(inst_, s), std::move(reason)});
    }
  }

  bool known_infeasible(const VertexSet& s) const {
    for (const auto& bad : infeasible_) {
      if (bad.is_subset_of(s)) return true;
    }
    return false;
  }

  void accept(const VertexSet& s, const Packing& p) {
    Rational value(0);
    for (auto b : s.members()) value += inst_.value(b);
    if (!have_incumbent_ || value > best_.value) {
      best_.value = value;
      best_.chosen = ids_of(inst_, s);
      best_.packing = p;
      have_incumbent_ = true;
    }
  }

  // Greedy by value: keep a box if the heuristic still packs the set.
  void seed_incumbent() {
    VertexSet s(inst_.box_count());
    Packing packing;
    for (std::size_t box : order_) {
      VertexSet with = s;
      with.set(box);
      if (auto p = heuristic_pack(inst_.subset(with))) {
        s = with;
        packing = std::move(*p);
      }
    }
    accept(s, packing);
  }

  Verdict decide(const VertexSet& s) {
    const std::vector<std::uint64_t> key = key_of(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (s.empty()) {
      accept(s, Packing{});
      return memo_[key] = Verdict::kFeasible;
    }
    if (known_infeasible(s)) {
      dismiss(s, "known_infeasible_subset");
      return memo_[key] = Verdict::kInfeasible;
    }
    const Instance sub = inst_.subset(s);
    SearchLimits inner = limits_;
    inner.max_time = limits_.max_time - (Clock::now() - start_);
    ++best_.opp_calls;
    SearchOutcome outcome = solve_opp(sub, inner, options_);
    add_stats(best_.stats, outcome.stats);
    if (outcome.verdict == Verdict::kFeasible) {
      accept(s, *outcome.packing);
    } else if (outcome.verdict == Verdict::kInfeasible) {
      infeasible_.push_back(s);
      dismiss(s, "opp_infeasible");
    } else {
      dismiss(s, "resource_limit");
    }
    return memo_[key] = outcome.verdict;
  }

  std::vector<std::uint64_t> key_of(const VertexSet& s) const {
    std::vector<std::uint64_t> key((inst_.box_count() + 63) / 64, 0);
    for (auto b : s.members()) key[b / 64] |= std::uint64_t{1} << (b % 64);
    return key;
  }

  static constexpr std::size_t kMaxDismissed = 1000;

  const Instance& inst_;
  const SearchLimits& limits_;
  const SearchOptions& options_;
  Clock::time_point start_;
  std::vector<std::size_t> order_;
  std::uint64_t seq_ = 0;
  OkpSolution best_;
  bool have_incumbent_ = false;
  std::vector<VertexSet> infeasible_;
  std::map<std::vector<std::uint64_t>, Verdict> memo_;
};

}  // namespace

OkpSolution solve_okp(const Instance& inst, const SearchLimits& limits,
                      const SearchOptions& options) {
  return OkpSearch(inst, limits, options).run();
}

std::vector<Rational> subset_sums(const std::vector<Rational>& widths, const Rational& lo,
                                  const Rational& hi) {
  std::int64_t scale = 1;
  for (const auto& w : widths) scale = std::lcm(scale, denominator64(w));
  std::int64_t total = 0;
  std::vector<std::int64_t> scaled;
  for (const auto& w : widths) {
    scaled.push_back(numerator64(w * scale));
    total += scaled.back();
  }
  constexpr std::int64_t kMaxTable = 100'000'000;
  if (total > kMaxTable) {
    throw Error(ErrorKind::kTooLarge, "subset-sum table would exceed 1e8 entries");
  }
  std::vector<char> reachable(static_cast<std::size_t>(total) + 1, 0);
  reachable[0] = 1;
  std::int64_t reach = 0;
  for (auto w : scaled) {
    for (std::int64_t s = reach; s >= 0; --s) {
      if (reachable[s]) reachable[s + w] = 1;
    }
    reach += w;
  }
  std::vector<Rational> out;
  for (std::int64_t s = 0; s <= total; ++s) {
    if (!reachable[s]) continue;
    const Rational r(s, scale);
    if (r >= lo && r <= hi) out.push_back(r);
  }
  return out;
}

SppSolution solve_spp(const std::vector<Box>& boxes, const std::vector<Rational>& fixed_dims,
                      const SearchLimits& limits, const SearchOptions& options) {
  const std::size_t d = fixed_dims.size() + 1;
  const auto start = Clock::now();
  std::vector<Rational> last;
  Rational max_last(0), sum_last(0), volume(0), section(1);
  for (const auto& w : fixed_dims) section *= w;
  for (const auto& b : boxes) {
    if (b.size.size() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "box '" + b.id + "' has the wrong dimension");
    }
    for (std::size_t i = 0; i + 1 < d; ++i) {
      if (b.size[i] > fixed_dims[i]) {
        throw Error(ErrorKind::kInfeasibleCrossSection,
                    "box '" + b.id + "' exceeds fixed dimension " + std::to_string(i + 1));
      }
    }
    last.push_back(b.size[d - 1]);
    max_last = std::max(max_last, b.size[d - 1]);
    sum_last += b.size[d - 1];
    Rational vol(1);
    for (const auto& s : b.size) vol *= s;
    volume += vol;
  }

  SppSolution out;
  if (boxes.empty()) return out;
  const Rational lo = std::max(max_last, volume / section);
  out.candidates = subset_sums(last, lo, sum_last);

  auto container = [&](const Rational& h) {
    std::vector<Rational> c = fixed_dims;
    c.push_back(h);
    return c;
  };

  // Stacking every box along the last axis always fits at the full sum.
  std::size_t hi = out.candidates.size() - 1;
  {
    Packing stack;
    Rational level(0);
    for (const auto& b : boxes) {
      std::vector<Rational> pos(d, Rational(0));
      pos[d - 1] = level;
      level += b.size[d - 1];
      stack.positions.emplace(b.id, std::move(pos));
    }
    out.height = out.candidates[hi];
    out.packing = std::move(stack);
  }
  std::size_t lo_idx = 0;
  while (lo_idx < hi) {
    const std::size_t mid = lo_idx + (hi - lo_idx) / 2;
    const Rational h = out.candidates[mid];
    SearchLimits inner = limits;
    inner.max_time = limits.max_time - (Clock::now() - start);
    if (inner.max_time.count() <= 0) {
      out.status = SolveStatus::kResourceLimit;
      return out;
    }
    const Instance probe(boxes, container(h));
    SearchOutcome outcome = solve_opp(probe, inner, options);
    out.probes.push_back({h, outcome.verdict});
    if (outcome.verdict == Verdict::kFeasible) {
      hi = mid;
      out.height = h;
      out.packing = std::move(*outcome.packing);
    } else if (outcome.verdict == Verdict::kInfeasible) {
      lo_idx = mid + 1;
    } else {
      out.status = SolveStatus::kResourceLimit;
      return out;
    }
  }
  return out;
}

}  // namespace packclass
