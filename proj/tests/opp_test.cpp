#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "packclass/errors.hpp"
#include "packclass/opp.hpp"
#include "packclass/oracle.hpp"
#include "packclass/packing_class.hpp"
#include "support.hpp"

namespace packclass {
namespace {

using testing::box;
using testing::dims;

Instance four_units() {
  return Instance({box("a", {1, 1}), box("b", {1, 1}), box("c", {1, 1}), box("d", {1, 1})},
                  dims({10, 10}));
}

EdgeState state_of(const Instance& inst) {
  auto s = initial_state(inst);
  return std::get<EdgeState>(std::move(s));
}

void assign_all(EdgeState& s, std::size_t i, std::initializer_list<VertexPair> pairs, Sign sign) {
  for (auto [u, v] : pairs) s.assign(Decision{i, u, v, sign});
}

TEST(InitialState, OversizedPairConflicts) {
  const Instance inst({box("x", {2, 2}), box("y", {2, 2})}, dims({3, 3}));
  const auto s = initial_state(inst);
  ASSERT_TRUE(std::holds_alternative<ImmediateConflict>(s));
  // Neither dimension can separate them.
  const PruneRule rule = std::get<ImmediateConflict>(s).reason.rule;
  EXPECT_TRUE(rule == PruneRule::kP3 || rule == PruneRule::kInfeasibleClique);
}

TEST(InitialState, ForcedPairsCompleteTheClass) {
  const Instance inst({box("x", {2, 1}), box("y", {2, 1})}, dims({2, 2}));
  const EdgeState s = state_of(inst);
  EXPECT_EQ(s.undecided_count(), 0U);
  EXPECT_EQ(s.sign(0, 0, 1), Sign::kPlus);
  EXPECT_EQ(s.sign(1, 0, 1), Sign::kMinus);
  EXPECT_TRUE(verify_packing_class(s.plus_class(), inst).all_ok());
}

TEST(InitialState, FiveBoxWidePair) {
  const EdgeState s = state_of(testing::five_box_instance());
  EXPECT_EQ(s.sign(0, 0, 1), Sign::kPlus);  // 4 + 5 > 5
  EXPECT_EQ(s.sign(1, 0, 1), Sign::kMinus);
}

TEST(EdgeState, UndoRestores) {
  const Instance inst = four_units();
  EdgeState s = state_of(inst);
  const auto before = s.undecided();
  const std::size_t mark = s.trail_size();
  s.assign(Decision{0, 0, 1, Sign::kPlus});
  s.assign(Decision{1, 2, 3, Sign::kMinus});
  EXPECT_EQ(s.undecided_count(), before.size() - 2);
  s.undo_to(mark);
  EXPECT_EQ(s.undecided(), before);
  EXPECT_EQ(s.sign(0, 0, 1), Sign::kUndecided);
}

TEST(Propagate, CompletesC4Nogood) {
  const Instance inst = four_units();
  EdgeState s = state_of(inst);
  // Cycle 0-1-2-3 in E+ with diagonal 0-2 in E-: diagonal 1-3 must join E+.
  assign_all(s, 0, {{0, 1}, {1, 2}, {2, 3}}, Sign::kPlus);
  const auto r = propagate(s, Decision{0, 0, 3, Sign::kPlus});
  ASSERT_TRUE(std::holds_alternative<Consequences>(r));
  EXPECT_EQ(s.sign(0, 1, 3), Sign::kUndecided);
  const auto r2 = propagate(s, Decision{0, 0, 2, Sign::kMinus});
  ASSERT_TRUE(std::holds_alternative<Consequences>(r2));
  EXPECT_EQ(s.sign(0, 1, 3), Sign::kPlus);
}

TEST(Propagate, ForcesMissingCycleEdgeOut) {
  const Instance inst = four_units();
  EdgeState s = state_of(inst);
  assign_all(s, 0, {{0, 1}, {1, 2}, {0, 3}}, Sign::kPlus);
  assign_all(s, 0, {{0, 2}}, Sign::kMinus);
  const auto r = propagate(s, Decision{0, 1, 3, Sign::kMinus});
  ASSERT_TRUE(std::holds_alternative<Consequences>(r));
  const auto& cons = std::get<Consequences>(r);
  EXPECT_EQ(cons.front(), (Decision{0, 1, 3, Sign::kMinus}));
  EXPECT_EQ(s.sign(0, 2, 3), Sign::kMinus);
}

TEST(Propagate, P3ClosureForcesLastDimension) {
  const Instance inst = four_units();
  EdgeState s = state_of(inst);
  const auto r = propagate(s, Decision{0, 0, 1, Sign::kPlus});
  ASSERT_TRUE(std::holds_alternative<Consequences>(r));
  EXPECT_EQ(s.sign(1, 0, 1), Sign::kMinus);
}

TEST(Propagate, ContradictionIsAConflict) {
  const Instance inst = four_units();
  EdgeState s = state_of(inst);
  s.assign(Decision{0, 0, 1, Sign::kPlus});
  const auto r = propagate(s, Decision{0, 0, 1, Sign::kMinus});
  ASSERT_TRUE(std::holds_alternative<Conflict>(r));
  EXPECT_EQ(std::get<Conflict>(r).reason.rule, PruneRule::kContradiction);
}

TEST(Propagate, IsIdempotent) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = testing::random_instance(rng, 5, 3, dims({4, 4}));
    auto init = initial_state(inst);
    if (!std::holds_alternative<EdgeState>(init)) continue;
    EdgeState s = std::get<EdgeState>(std::move(init));
    const auto pending = s.undecided();
    if (pending.empty()) continue;
    const Decision d = pending[rng() % pending.size()];
    if (!std::holds_alternative<Consequences>(propagate(s, d))) continue;
    const auto trail = s.trail();
    const auto again = propagate(s, d);
    ASSERT_TRUE(std::holds_alternative<Consequences>(again));
    EXPECT_TRUE(std::get<Consequences>(again).empty());
    EXPECT_EQ(s.trail(), trail);
  }
}

TEST(PruneCheck, Examples) {
  {
    const Instance inst = four_units();
    EdgeState s = state_of(inst);
    assign_all(s, 0, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, Sign::kPlus);
    assign_all(s, 0, {{0, 2}, {1, 3}}, Sign::kMinus);
    const auto r = prune_check(s);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->rule, PruneRule::kInducedC4);
    EXPECT_EQ(r->dimension, 0U);
    EXPECT_EQ(r->certificate.size(), 4U);
  }
  {
    const Instance inst({box("a", {1, 1}), box("b", {1, 1}), box("c", {1, 1}), box("d", {1, 1}),
                         box("e", {1, 1})},
                        dims({10, 10}));
    EdgeState s = state_of(inst);
    // C5 in E-_0 with every chord in E+_0.
    assign_all(s, 0, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}, Sign::kMinus);
    assign_all(s, 0, {{0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 4}}, Sign::kPlus);
    const auto r = prune_check(s);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->rule, PruneRule::kOddCycle);
    EXPECT_EQ(r->certificate.size() % 2, 1U);
  }
  {
    const Instance inst({box("a", {2, 1}), box("b", {2, 1}), box("c", {2, 1})}, dims({5, 5}));
    EdgeState s = state_of(inst);
    assign_all(s, 0, {{0, 1}, {0, 2}, {1, 2}}, Sign::kMinus);  // 2 + 2 + 2 > 5
    const auto r = prune_check(s);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->rule, PruneRule::kInfeasibleClique);
    EXPECT_EQ(r->certificate.size(), 3U);
  }
  EXPECT_FALSE(prune_check(state_of(four_units())));
}

TEST(BranchSelect, DeterministicAndPrefersInclusion) {
  const Instance inst = four_units();
  EdgeState s = state_of(inst);
  const Decision first = branch_select(s);
  EXPECT_EQ(first, branch_select(s));
  EXPECT_EQ(first.sign, Sign::kPlus);
  EXPECT_EQ(first, (Decision{0, 0, 1, Sign::kPlus}));
  // (0,2,3) and (1,1,3) both score 2; the smaller key wins.
  s.assign(Decision{1, 2, 3, Sign::kPlus});
  s.assign(Decision{0, 1, 3, Sign::kPlus});
  EXPECT_EQ(branch_select(s), (Decision{0, 2, 3, Sign::kPlus}));

  const Instance full({box("x", {2, 1}), box("y", {2, 1})}, dims({2, 2}));
  try {
    branch_select(state_of(full));
    FAIL() << "expected NoUndecided";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoUndecided);
  }
}

TEST(SolveOpp, Examples) {
  const auto yes = solve_opp(testing::five_box_instance());
  ASSERT_EQ(yes.verdict, Verdict::kFeasible);
  EXPECT_TRUE(validate_packing(*yes.packing, testing::five_box_instance()).valid);
  EXPECT_TRUE(verify_packing_class(*yes.cls, testing::five_box_instance()).all_ok());

  const Instance no({box("x", {2, 2}), box("y", {2, 2})}, dims({3, 3}));
  EXPECT_EQ(solve_opp(no).verdict, Verdict::kInfeasible);

  // Five 2x2 squares do not fit in 5x5 although the area does.
  std::vector<Box> squares;
  for (int k = 0; k < 5; ++k) squares.push_back(box("s" + std::to_string(k), {2, 2}));
  const Instance five(squares, dims({5, 5}));
  const SearchOptions engine{false, false, 8};
  const auto r = solve_opp(five, {}, engine);
  EXPECT_EQ(r.verdict, Verdict::kInfeasible);
  EXPECT_GT(r.stats.nodes, 0U);
}

TEST(SolveOpp, ResourceLimit) {
  std::vector<Box> squares;
  for (int k = 0; k < 5; ++k) squares.push_back(box("s" + std::to_string(k), {2, 2}));
  const Instance five(squares, dims({5, 5}));
  const auto r = solve_opp(five, SearchLimits{1, std::chrono::seconds(60)}, {false, false, 8});
  EXPECT_EQ(r.verdict, Verdict::kResourceLimit);
  EXPECT_FALSE(r.packing);
}

TEST(SolveOpp, StatsAreDeterministic) {
  const SearchOptions engine{false, false, 8};
  const auto a = solve_opp(testing::five_box_instance(), {}, engine);
  const auto b = solve_opp(testing::five_box_instance(), {}, engine);
  EXPECT_TRUE(a.stats.same_counts(b.stats));
  EXPECT_EQ(a.packing->positions, b.packing->positions);
}

TEST(SolveOpp, AgreesWithBruteForce) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 300; ++t) {
    const Instance inst = testing::random_instance(rng, 5, 3, dims({4, 4}));
    const bool truth = oracle::brute_force_opp(inst).feasible;
    for (const auto& options : {SearchOptions{}, SearchOptions{false, false, 8},
                                SearchOptions{false, false, 1}}) {
      const auto r = solve_opp(inst, {}, options);
      ASSERT_NE(r.verdict, Verdict::kResourceLimit);
      EXPECT_EQ(r.verdict == Verdict::kFeasible, truth);
      if (r.packing) {
        EXPECT_TRUE(validate_packing(*r.packing, inst).valid);
        EXPECT_TRUE(verify_packing_class(*r.cls, inst).all_ok());
      }
    }
  }
}

TEST(HeuristicPack, ProducesValidPackingsOnly) {
  const auto p = heuristic_pack(testing::five_box_instance());
  if (p) EXPECT_TRUE(validate_packing(*p, testing::five_box_instance()).valid);
  const Instance easy({box("a", {1, 1}), box("b", {1, 1})}, dims({2, 2}));
  const auto q = heuristic_pack(easy);
  ASSERT_TRUE(q);
  EXPECT_TRUE(validate_packing(*q, easy).valid);
  const Instance no({box("x", {2, 2}), box("y", {2, 2})}, dims({3, 3}));
  EXPECT_FALSE(heuristic_pack(no));
}

TEST(QuickInfeasible, SoundOnRandomInstances) {
  const Instance volume({box("a", {2, 2}), box("b", {2, 2}), box("c", {1, 1})}, dims({3, 3}));
  EXPECT_TRUE(quick_infeasible(volume, VertexSet::full(3)));
  VertexSet ac(3);
  ac.set(0);
  ac.set(2);
  EXPECT_FALSE(quick_infeasible(volume, ac));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const Instance inst = testing::random_instance(rng, 5, 3, dims({4, 4}));
    if (quick_infeasible(inst, VertexSet::full(inst.box_count()))) {
      EXPECT_FALSE(oracle::brute_force_opp(inst).feasible);
    }
  }
}

TEST(DefaultLimits, ReadsEnvironment) {
  ::setenv("PACKCLASS_TIME_LIMIT", "2.5", 1);
  EXPECT_DOUBLE_EQ(default_limits().max_time.count(), 2.5);
  ::unsetenv("PACKCLASS_TIME_LIMIT");
  EXPECT_DOUBLE_EQ(default_limits().max_time.count(), SearchLimits{}.max_time.count());
}

}  // namespace
}  // namespace packclass
