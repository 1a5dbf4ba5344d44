#include <gtest/gtest.h>

#include <nashe8/curves.hpp>
#include <nashe8/tables.hpp>

using namespace nashe8;

namespace {

const std::vector<OrbitCurve>& components() {
  static const std::vector<OrbitCurve> w = [] {
    std::vector<OrbitCurve> out;
    for (const auto& row : reference_tables().divisors) out.push_back(orbit_curve(model_branch(row), true));
    return out;
  }();
  return w;
}

}  // namespace

TEST(Curves, BranchCountsAreOrbitSizes) {
  const auto T = reference_tables();
  for (const auto& row : T.divisors) {
    const auto& W = components()[static_cast<size_t>(row.k - 1)];
    EXPECT_EQ(static_cast<int>(W.branches.size()), T.orbit_data[static_cast<size_t>(row.k - 1)].branches) << "k=" << row.k;
    // orbit-stabiliser in the binary group of order 120
    EXPECT_EQ(static_cast<int>(W.branches.size()) * W.stabiliser, 120) << "k=" << row.k;
  }
}

TEST(Curves, MultiplicityIsBranchesTimesA) {
  // independent of the elimination code: each branch (t^a, lambda t^b) has multiplicity a
  for (const auto& row : reference_tables().divisors) {
    const auto& W = components()[static_cast<size_t>(row.k - 1)];
    EXPECT_EQ(multiplicity(W.branches), static_cast<int>(W.branches.size()) * row.a) << "k=" << row.k;
  }
}

TEST(Curves, TangentOrbitMatchesModel) {
  for (const auto& row : reference_tables().divisors) {
    if (row.orbit == 'P') continue;
    EXPECT_EQ(tangent_orbit(model_branch(row)), row.orbit) << "k=" << row.k;
  }
}

TEST(Curves, TangentIntersectionExceedsMultiplicity) {
  const auto T = reference_tables();
  for (int k = 2; k <= 8; ++k) {
    const auto& W = components()[static_cast<size_t>(k - 1)];
    const int I = intersect_line(W.branches, tangent_line(W.branches[0]));
    EXPECT_EQ(I, T.orbit_data[static_cast<size_t>(k - 1)].tangent_I) << "k=" << k;
    EXPECT_GT(I, multiplicity(W.branches));
  }
}

TEST(Curves, QuotientOrdersOfTestCurves) {
  const auto V = class_frame('V').M;
  for (const auto& q : reference_quotient_orders()) {
    const auto got = quotient_orders(Branch::monomial(V, q.a, q.b, kTestModulus));
    EXPECT_EQ(got, q.orders) << "(" << q.a << "," << q.b << ")";
  }
}

TEST(Curves, SingleShapesOfInvariantEquations) {
  const auto T = reference_tables();
  for (int k = 2; k <= 8; ++k) {
    const auto ie = invariant_equation(components()[static_cast<size_t>(k - 1)], kLambda0, 60);
    const auto rep = check_shape(ie.h, T.single_shapes[static_cast<size_t>(k - 2)]);
    EXPECT_TRUE(rep.ok) << "k=" << k << " observed " << rep.observed;
  }
}
