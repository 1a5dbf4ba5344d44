#include <gtest/gtest.h>

#include <set>

#include <nashe8/adjacency.hpp>

using namespace nashe8;

namespace {

const CurveData& data() {
  static const CurveData d = compute_curve_data(reference_tables().divisors);
  return d;
}

std::set<Pair> as_set(const std::vector<Pair>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Adjacency, FiftySixOrderedPairs) {
  const auto e = eliminate(data());
  EXPECT_EQ(e.stage1.size(), 56u);
  for (const auto& x : e.stage1) EXPECT_NE(x.pair.first, x.pair.second);
}

TEST(Adjacency, RuleSetsMatchStoredLists) {
  const auto e = eliminate(data());
  EXPECT_EQ(as_set(e.rule1), as_set(reference_stage1()));
  EXPECT_EQ(as_set(e.rule2), as_set(reference_stage3()));
  EXPECT_EQ(as_set(e.remaining), as_set(reference_remaining()));
  EXPECT_EQ(e.rule1.size() + e.rule2.size() + e.remaining.size(), 56u);
}

TEST(Adjacency, EveryEliminationHasAWitness) {
  const auto e = eliminate(data());
  for (const auto& x : e.stage1) {
    if (x.verdict == Verdict::kEliminated) {
      EXPECT_GE(x.witness.test, 0) << x.pair.first << "," << x.pair.second;
    }
  }
}

TEST(Adjacency, ViolatedDetectsSemicontinuityFailure) {
  // a transverse arc through E_2 degenerating to one through E_1 would raise multiplicity 30 -> 60
  const auto w = violated(data(), 2, 1, {});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->test, kGenericTest);
  EXPECT_LT(w->lhs, w->rhs);
}

TEST(Profiles, SurvivingRowsAreTheStrataTable) {
  const auto T = reference_tables();
  const auto d = data();
  const auto e = eliminate(d);
  const auto pe = enumerate_profiles(d, e);
  std::set<std::pair<int, std::vector<int>>> stored;
  for (const auto& r : T.strata) {
    auto v = r.returns;
    std::sort(v.begin(), v.end());
    stored.insert({r.i, v});
  }
  EXPECT_EQ(pe.rows, stored);
  EXPECT_EQ(pe.nt_survivors.size(), 3u);
  for (const auto& r : nt_reduction(pe)) EXPECT_TRUE(r.target_survives) << r.from.profile.str();
  EXPECT_TRUE(symmetric_labelling_consistent(d, e));
}
