#include <gtest/gtest.h>

#include <nashe8/deformation.hpp>

using namespace nashe8;

TEST(Versal, FamiliesAreWellFormed) {
  const auto T = reference_tables();
  ASSERT_EQ(T.versal.size(), 4u);
  for (const auto& f : T.versal) {
    const auto r = check_family(f);
    EXPECT_TRUE(r.ok()) << "N" << f.i;
    // b_n has weight below deg h0 exactly on the special block
    for (int n = r.a_range.first; n <= r.a_range.second; ++n)
      EXPECT_LT(f.params[static_cast<size_t>(n - 1)].weight(), h0_weight(f));
  }
}

TEST(Versal, FamilyMemberAtZeroIsH0) {
  const auto T = reference_tables();
  const auto& f = family_for(T.versal, 7);
  const auto m = family_member(f, std::vector<mpq_class>(f.params.size(), 0));
  ASSERT_EQ(m.size(), f.h0.size());
  for (const auto& [c, mono] : f.h0) EXPECT_EQ(m.at(mono), c);
}

TEST(Shapes, ReduceMonomialUsesTheSurfaceEquation) {
  // x^2 = -y^3 - z^5 keeps every normal monomial at most linear in x
  const auto r = reduce_monomial({2, 1, 0});
  for (const auto& m : r) {
    EXPECT_LE(m.x, 1);
    EXPECT_EQ(m.weight(), (Monomial{2, 1, 0}).weight());
  }
  EXPECT_EQ(r.size(), 2u);
}

TEST(Strata, DerivedEquationsMatchEveryRow) {
  const auto T = reference_tables();
  for (const auto& row : T.strata) {
    const auto c = check_stratum(T.divisors, row, T.versal, T.single_shapes);
    EXPECT_TRUE(c.ok()) << case_label(row.i, row.returns);
    EXPECT_EQ(c.codim, row.delta) << case_label(row.i, row.returns);
  }
}

TEST(Strata, DerivationIsSymmetricInTheReturns) {
  const auto T = reference_tables();
  const auto& f = family_for(T.versal, 1);
  const auto a = derive_stratum(f, {3, 5}, T.single_shapes);
  const auto b = derive_stratum(f, {5, 3}, T.single_shapes);
  EXPECT_EQ(a.S, b.S);
  EXPECT_EQ(a.A, b.A);
}

TEST(Strata, CorruptedRowIsRejected) {
  const auto T = reference_tables();
  auto row = T.strata.front();
  row.delta += 1;
  EXPECT_FALSE(check_stratum(T.divisors, row, T.versal, T.single_shapes).ok());
  row = T.strata.front();
  row.A.push_back(row.S.back());
  row.S.pop_back();
  EXPECT_FALSE(check_stratum(T.divisors, row, T.versal, T.single_shapes).ok());
}

TEST(H0, BaseEquationsMatchTheOrbitCurves) {
  const auto T = reference_tables();
  for (const auto& f : T.versal) {
    const auto c = certify_h0(T.divisors, f, T.single_shapes);
    EXPECT_TRUE(c.ok()) << "N" << f.i << " " << c.equation;
  }
}

TEST(E6, RoucheRadius) {
  // (y - 1)(y - 2): 2 > 3/2 + 1/4 at r = 1/2
  EXPECT_EQ(rouche_radius_exponent({2, -3, 1}), 1);
  EXPECT_EQ(rouche_radius_exponent({0, 1}), -1);
  // root at 1/1024 needs radius 2^-11
  EXPECT_EQ(rouche_radius_exponent({-1, 1024}), 11);
}

TEST(E6, CentralFiberHasOnlyTheOrigin) {
  const auto s = e6_sample({0, 0, 0, 0, 0});
  EXPECT_TRUE(s.no_other_singular_point());
  EXPECT_EQ(s.origin_mult, 3);  // 4y^3 + 9z^4 - z^5, the E6 plane curve
}

TEST(E6, SampledFibersAreSmoothAwayFromTheOrigin) {
  const auto r = verify_e6_family(42, 4);
  EXPECT_EQ(r.samples.size(), 5u);
  EXPECT_TRUE(r.no_singular_fiber_found);
  EXPECT_TRUE(r.never_delta_constant);
}
