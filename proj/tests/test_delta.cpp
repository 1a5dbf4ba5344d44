#include <gtest/gtest.h>

#include <nashe8/delta.hpp>
#include <nashe8/tables.hpp>

using namespace nashe8;

namespace {

using PS = PowerSeries<Q60>;
constexpr int kT = 64;

PS mono(int k, long c = 1) { return PS::monomial(Q60(c), k, kT); }
PS zero() { return PS(kT); }

}  // namespace

// textbook values: cusp 1, node 1, A_{2k} branch (t^2, t^{2k+1}) k, three axes in 3-space 2
TEST(DeltaOracle, PlaneCurveSingularities) {
  EXPECT_EQ(delta_oracle(SpaceGerm<Q60>{{mono(2), mono(3), zero()}}).delta, 1);
  EXPECT_EQ(delta_oracle(SpaceGerm<Q60>{{mono(1), zero(), zero()}, {zero(), mono(1), zero()}}).delta, 1);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(delta_oracle(SpaceGerm<Q60>{{mono(2), mono(2 * k + 1), zero()}}).delta, k) << k;
}

TEST(DeltaOracle, SpaceCurves) {
  const SpaceGerm<Q60> axes{{mono(1), zero(), zero()}, {zero(), mono(1), zero()}, {zero(), zero(), mono(1)}};
  EXPECT_EQ(delta_oracle(axes).delta, 2);
  // monomial curve (t^3, t^4, t^5): semigroup <3,4,5>, gaps {1, 2}
  EXPECT_EQ(delta_oracle(SpaceGerm<Q60>{{mono(3), mono(4), mono(5)}}).delta, 2);
  // smooth branch
  EXPECT_EQ(delta_oracle(SpaceGerm<Q60>{{mono(1), mono(2), mono(3)}}).delta, 0);
}

TEST(DeltaOracle, PlateauPolicy) {
  const auto r = delta_oracle(SpaceGerm<Q60>{{mono(2), mono(3), zero()}});
  EXPECT_GE(r.plateau, DeltaPolicy{}.plateau);
  ASSERT_GE(r.history.size(), 3u);
  EXPECT_EQ(r.history.front().first, DeltaPolicy{}.T0);
}

TEST(DeltaOracle, DoubleBranchNeverStabilises) {
  // the same branch twice is a non-reduced germ; delta(T) grows with T
  const SpaceGerm<Q60> twice{{mono(2), mono(3), zero()}, {mono(2), mono(3), zero()}};
  DeltaPolicy pol;
  pol.Tcap = 128;
  EXPECT_THROW(delta_oracle(twice, pol), Unstabilized);
}

TEST(ClassDelta, SemigroupMatchesOracle) {
  const auto T = reference_tables();
  for (const auto& row : T.divisors) {
    const auto& c = class_delta_cached(row);
    EXPECT_EQ(c.semigroup.delta(), static_cast<int>(c.semigroup.gaps.size()));
    EXPECT_GE(c.semigroup.conductor, c.semigroup.delta()) << "k=" << row.k;
    // counting gaps against nT - dim of the span mod p at a random modulus
    EXPECT_EQ(union_delta_modp(T.divisors, {row.k}, 42).delta, c.semigroup.delta()) << "k=" << row.k;
  }
}

TEST(UnionDelta, ExactAgreesWithModP) {
  const auto T = reference_tables();
  for (const std::vector<int>& classes : {std::vector<int>{3, 5}, std::vector<int>{5, 5}, std::vector<int>{2, 6}}) {
    const auto u = union_delta(T.divisors, classes);
    EXPECT_TRUE(u.consistent);
    EXPECT_EQ(union_delta_modp(T.divisors, classes, 42).delta, u.delta);
  }
}

TEST(UnionDelta, StoredDeltaDrops) {
  const auto T = reference_tables();
  for (const auto& row : T.strata) {
    const int d0 = class_delta_cached(T.divisors[static_cast<size_t>(row.i - 1)]).semigroup.delta();
    EXPECT_EQ(d0 - union_delta(T.divisors, row.returns).delta, row.delta) << case_label(row.i, row.returns);
  }
}
