#include <gtest/gtest.h>

#include "packclass/errors.hpp"
#include "packclass/oracle.hpp"
#include "packclass/packing_class.hpp"
#include "support.hpp"

namespace packclass {
namespace {

using testing::box;
using testing::dims;

TEST(BruteForceOpp, Examples) {
  const auto five = oracle::brute_force_opp(testing::five_box_instance());
  ASSERT_TRUE(five.feasible);
  EXPECT_TRUE(validate_packing(*five.packing, testing::five_box_instance()).valid);

  const Instance no({box("x", {2, 2}), box("y", {2, 2})}, dims({3, 3}));
  EXPECT_FALSE(oracle::brute_force_opp(no).feasible);

  std::vector<Box> many;
  for (int k = 0; k < 6; ++k) many.push_back(box("m" + std::to_string(k), {1, 1}));
  try {
    oracle::brute_force_opp(Instance(many, dims({9, 9})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooLarge);
  }
}

TEST(EnumeratePackingClasses, Examples) {
  const Instance pair({box("x", {2, 1}), box("y", {2, 1})}, dims({2, 2}));
  const auto classes = oracle::enumerate_packing_classes(pair, 100);
  ASSERT_EQ(classes.size(), 1U);
  EXPECT_TRUE(classes[0].edge_sets[0].has_edge(0, 1));
  EXPECT_FALSE(classes[0].edge_sets[1].has_edge(0, 1));

  const Instance no({box("x", {2, 2}), box("y", {2, 2})}, dims({3, 3}));
  EXPECT_TRUE(oracle::enumerate_packing_classes(no, 100).empty());

  const auto five = oracle::enumerate_packing_classes(testing::five_box_instance(), 1000);
  EXPECT_FALSE(five.empty());
  for (const auto& cls : five) EXPECT_TRUE(verify_packing_class(cls, testing::five_box_instance()).all_ok());
  EXPECT_EQ(oracle::enumerate_packing_classes(testing::five_box_instance(), 2).size(), 2U);
}

TEST(GraphOracles, Examples) {
  EXPECT_FALSE(oracle::oracle_is_interval(testing::cycle(4)));
  EXPECT_TRUE(oracle::oracle_is_interval(testing::complete(5)));
  EXPECT_TRUE(oracle::oracle_is_comparability(testing::cycle(4)));
  EXPECT_FALSE(oracle::oracle_is_comparability(testing::cycle(5)));
  EXPECT_TRUE(oracle::oracle_is_comparability(testing::cycle(6)));
}

TEST(OkpAndSppOracles, Examples) {
  EXPECT_EQ(oracle::brute_force_okp_value(testing::five_box_instance()), Rational(18));
  EXPECT_EQ(oracle::brute_force_min_height({box("a", {2, 1}), box("b", {2, 1})}, dims({2})),
            Rational(2));
  EXPECT_EQ(oracle::brute_force_min_height({box("a", {1, 1}), box("b", {1, 3})}, dims({2})),
            Rational(3));
}

}  // namespace
}  // namespace packclass
