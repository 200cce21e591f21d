#include <random>

#include <gtest/gtest.h>

#include "packclass/errors.hpp"
#include "packclass/oracle.hpp"
#include "packclass/packing_class.hpp"
#include "support.hpp"

namespace packclass {
namespace {

using testing::box;
using testing::dims;

PackingClass make_class(const Instance& inst,
                        std::initializer_list<std::vector<VertexPair>> sets) {
  PackingClass cls;
  for (const auto& edges : sets) {
    Graph g(inst.ids());
    for (auto [u, v] : edges) g.add_edge(u, v);
    cls.edge_sets.push_back(std::move(g));
  }
  return cls;
}

Instance stacked_pair() { return Instance({box("b1", {2, 1}), box("b2", {2, 1})}, dims({2, 2})); }

TEST(VerifyPackingClass, StackedPairPasses) {
  const Instance inst = stacked_pair();
  const ClassReport r = verify_packing_class(make_class(inst, {{{0, 1}}, {}}), inst);
  EXPECT_TRUE(r.all_ok());
}

TEST(VerifyPackingClass, OverweightStableSetFailsP2) {
  const Instance inst = stacked_pair();
  const ClassReport r = verify_packing_class(make_class(inst, {{}, {}}), inst);
  EXPECT_FALSE(r.all_ok());
  EXPECT_FALSE(r.p2[0].ok);
  EXPECT_EQ(r.p2[0].heaviest.vertices, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(r.p2[1].ok);
  EXPECT_TRUE(r.p3_ok);
}

TEST(VerifyPackingClass, SharedEdgeFailsP3) {
  const Instance inst = stacked_pair();
  const ClassReport r = verify_packing_class(make_class(inst, {{{0, 1}}, {{0, 1}}}), inst);
  EXPECT_FALSE(r.p3_ok);
  ASSERT_TRUE(r.p3_shared);
  EXPECT_EQ(*r.p3_shared, (VertexPair{0, 1}));
}

TEST(VerifyPackingClass, NonIntervalFailsP1) {
  const Instance inst({box("a", {1, 1}), box("b", {1, 1}), box("c", {1, 1}), box("d", {1, 1})},
                      dims({4, 4}));
  const ClassReport r =
      verify_packing_class(make_class(inst, {{{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {}}), inst);
  EXPECT_FALSE(r.p1[0].ok);
  ASSERT_TRUE(r.p1[0].witness);
  EXPECT_EQ(r.p1[0].witness->kind, IntervalWitness::Kind::kChordlessCycle);
}

TEST(VerifyPackingClass, MatchesGraphsById) {
  const Instance inst = stacked_pair();
  PackingClass cls;
  Graph g1({"b2", "b1"});
  g1.add_edge(0, 1);
  cls.edge_sets = {g1, Graph({"b2", "b1"})};
  EXPECT_TRUE(verify_packing_class(cls, inst).all_ok());
  cls.edge_sets[1] = Graph({"b1", "zz"});
  EXPECT_THROW(verify_packing_class(cls, inst), Error);
  cls.edge_sets.pop_back();
  EXPECT_THROW(verify_packing_class(cls, inst), Error);
}

TEST(OrientAndExtract, SingleArc) {
  const Instance inst({box("b1", {4, 1}), box("b2", {1, 1})}, dims({5, 1}));
  Orientation o;
  o.dags.emplace_back(inst.ids());
  o.dags.emplace_back(inst.ids());
  o.dags[0].add_arc(0, 1);
  const Packing p = extract_packing(o, inst);
  EXPECT_EQ(p.positions.at("b1"), dims({0, 0}));
  EXPECT_EQ(p.positions.at("b2"), dims({4, 0}));
}

TEST(OrientAndExtract, CompleteGraphsLeaveNothingToOrient) {
  const Instance inst({box("a", {1, 1})}, dims({1, 1}));
  const PackingClass cls = make_class(inst, {{}, {}});
  const Orientation o = orient_class(cls, inst);
  for (const auto& dag : o.dags) EXPECT_EQ(dag.arc_count(), 0U);
  EXPECT_EQ(extract_packing(o, inst).positions.at("a"), dims({0, 0}));
}

TEST(OrientAndExtract, RejectsNonClasses) {
  const Instance inst = stacked_pair();
  EXPECT_THROW(orient_class(make_class(inst, {{}, {}}), inst), Error);
}

TEST(OrientAndExtract, FiveBoxClassYieldsThirtySixPackings) {
  const Instance inst = testing::five_box_instance();
  std::size_t with_six = 0;
  for (const auto& cls : oracle::enumerate_packing_classes(inst, 1000)) {
    ASSERT_TRUE(verify_packing_class(cls, inst).all_ok());
    const Packing p = extract_packing(orient_class(cls, inst), inst);
    EXPECT_TRUE(validate_packing(p, inst).valid);
    const auto all = enumerate_class_orientations(cls, 100);
    if (all.per_dimension != std::vector<std::size_t>{6, 6}) continue;
    ++with_six;
    ASSERT_EQ(all.orientations.size(), 36U);
    for (const auto& o : all.orientations) {
      const Packing q = extract_packing(o, inst);
      EXPECT_TRUE(validate_packing(q, inst).valid);
      EXPECT_TRUE(is_gapless(q, inst));
    }
  }
  EXPECT_EQ(with_six, 1U);
}

TEST(CliqueBound, Arithmetic) {
  const Instance inst({box("a", {3, 1}), box("b", {3, 1}), box("c", {3, 1}), box("d", {3, 1})},
                      dims({5, 4}));
  // Need a clique of ceil(12/5) = 3 among the four boxes in dimension 1.
  const VertexSet all = VertexSet::full(4);
  EXPECT_TRUE(clique_bound_holds(make_class(inst, {{{0, 1}, {0, 2}, {1, 2}}, {}}), all, 0, inst));
  EXPECT_FALSE(clique_bound_holds(make_class(inst, {{{0, 1}, {2, 3}}, {}}), all, 0, inst));
  VertexSet one(4);
  one.set(2);
  EXPECT_TRUE(clique_bound_holds(make_class(inst, {{}, {}}), one, 0, inst));
  EXPECT_THROW(clique_bound_holds(make_class(inst, {{}, {}}), one, 2, inst), Error);
}

TEST(PackingClassProperty, RoundTripsOnRandomPackings) {
  std::mt19937_64 rng(21);
  std::size_t checked = 0;
  for (int t = 0; t < 300; ++t) {
    const Instance inst = testing::random_instance(rng, 5, 3, dims({5, 5}));
    const auto found = oracle::brute_force_opp(inst);
    if (!found.feasible) continue;
    const PackingClass cls = project_to_class(*found.packing, inst);
    ASSERT_TRUE(verify_packing_class(cls, inst).all_ok());
    for (std::uint32_t mask = 1; mask < (1U << inst.box_count()); ++mask) {
      VertexSet s(inst.box_count());
      for (std::size_t b = 0; b < inst.box_count(); ++b) {
        if (mask >> b & 1U) s.set(b);
      }
      for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(clique_bound_holds(cls, s, i, inst));
    }
    const auto orientations = enumerate_class_orientations(cls, 20);
    for (const auto& o : orientations.orientations) {
      const Packing q = extract_packing(o, inst);
      ASSERT_TRUE(validate_packing(q, inst).valid);
      EXPECT_TRUE(is_gapless(q, inst));
      const PackingClass back = project_to_class(q, inst);
      for (std::size_t i = 0; i < 2; ++i) {
        for (auto [u, v] : back.edge_sets[i].edges()) EXPECT_TRUE(cls.edge_sets[i].has_edge(u, v));
      }
    }
    ++checked;
  }
  EXPECT_GT(checked, 50U);
}

}  // namespace
}  // namespace packclass
