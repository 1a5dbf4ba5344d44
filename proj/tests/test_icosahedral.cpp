#include <gtest/gtest.h>

#include <nashe8/icosahedral.hpp>

using namespace nashe8;

TEST(BinaryIcosahedral, OrderAndCensus) {
  const auto& G = icosahedral();
  EXPECT_EQ(G.order(), 120u);
  EXPECT_EQ(G.projective_order(), 60u);
  // element orders of SL(2,5): 1, 2, 3, 4, 5, 6, 10
  const std::map<int, int> census{{1, 1}, {2, 1}, {3, 20}, {4, 30}, {5, 24}, {6, 20}, {10, 24}};
  EXPECT_EQ(G.order_census(), census);
}

TEST(BinaryIcosahedral, ClosedUnderProducts) {
  const auto& G = icosahedral();
  for (size_t i = 0; i < G.order(); i += 7)
    for (size_t j = 0; j < G.order(); j += 11) EXPECT_TRUE(G.contains(G.elements()[i] * G.elements()[j]));
  for (const auto& g : G.elements()) EXPECT_TRUE(g.det().is_one());
}

TEST(BinaryIcosahedral, SpecialOrbits) {
  const auto& G = icosahedral();
  const std::map<char, std::pair<size_t, int>> expected{{'E', {30, 2}}, {'F', {20, 3}}, {'V', {12, 5}}};
  for (const auto& [label, pts] : G.special_orbits()) {
    ASSERT_TRUE(expected.count(label));
    EXPECT_EQ(pts.size(), expected.at(label).first) << label;
    EXPECT_EQ(G.projective_stabiliser(pts[0]), expected.at(label).second) << label;
  }
}

TEST(BinaryIcosahedral, InvariantsAndSyzygy) {
  const auto& G = icosahedral();
  EXPECT_EQ(G.E().degree(), 30);
  EXPECT_EQ(G.F().degree(), 20);
  EXPECT_EQ(G.V().degree(), 12);
  EXPECT_TRUE(G.is_invariant(G.E()));
  EXPECT_TRUE(G.is_invariant_exhaustive(G.V()));
  // normalised so that the quotient is x^2 + y^3 + z^5 = 0
  EXPECT_TRUE((G.E().pow(2) + G.F().pow(3) + G.V().pow(5)).is_zero());
  // a non-invariant form
  EXPECT_FALSE(G.is_invariant(Form<Q5>::linear(Q5(1), Q5(0)).pow(12)));
}
