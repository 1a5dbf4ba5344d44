#include <gtest/gtest.h>

#include <nashe8/complex_embed.hpp>
#include <nashe8/cyclotomic.hpp>
#include <nashe8/eliminate.hpp>
#include <nashe8/generic_scalar.hpp>
#include <nashe8/linalg.hpp>
#include <nashe8/modp.hpp>
#include <nashe8/power_series.hpp>

using namespace nashe8;

TEST(Cyclotomic, ZetaFiveRelations) {
  const Q5 z = Q5::zeta();
  EXPECT_TRUE((z * z.pow(4)).is_one());
  EXPECT_TRUE((Q5(1) + z + z * z + z.pow(3) + z.pow(4)).is_zero());
  EXPECT_TRUE(z.pow(5).is_one());
  EXPECT_FALSE(z.is_rational());
}

TEST(Cyclotomic, InverseAndGalois) {
  const Q5 z = Q5::zeta();
  const Q5 a = Q5(2) + z * Q5(3) - z.pow(3);
  EXPECT_TRUE((a * a.inverse()).is_one());
  // the norm is fixed by every automorphism
  Q5 norm(1);
  for (int k = 1; k < 5; ++k) norm *= a.galois(k);
  EXPECT_TRUE(norm.is_rational());
  EXPECT_THROW(Q5(0).inverse(), DivisionByZero);
}

TEST(Cyclotomic, EmbeddingIntoQ60) {
  const Q60 w = Q60::zeta();
  EXPECT_TRUE(w.pow(60).is_one());
  EXPECT_FALSE(w.pow(30).is_one());
  EXPECT_EQ(Q5::zeta().embed<60>(), w.pow(12));
  EXPECT_EQ(Q60::degree, 16);
}

TEST(Cyclotomic, ComplexEmbeddingGoldenRatio) {
  // z + z^4 = 2 cos(2 pi / 5) = (sqrt 5 - 1) / 2
  const Q5 z = Q5::zeta();
  const auto e = embed_complex(z + z.pow(4), 30);
  EXPECT_EQ(e.re.str(12).substr(0, 12), "0.6180339887");
}

TEST(ModP, FieldAxioms) {
  const FpA a(123456789), b(987654321);
  EXPECT_TRUE((a * a.inverse()).is_one());
  EXPECT_EQ((a + b) - b, a);
  EXPECT_TRUE(FpA(2).pow(kPrimeA - 1).is_one());  // Fermat
}

TEST(ModP, ReductionOfCyclotomicZero) {
  const Q5 z = Q5::zeta();
  EXPECT_TRUE((reduce<kPrimeA, 5>(Q5(1) + z + z * z + z.pow(3) + z.pow(4))).is_zero());
}

TEST(MPoly, GcdAndExactDivision) {
  using P = MPoly<Q5>;
  const P x = P::var(0), y = P::var(1), l = P::var(2);
  const P f = (x + y) * (x - l * y), g = (x + y) * (x + y + l);
  EXPECT_EQ(gcd(f, g).monic(), (x + y).monic());
}

TEST(Eliminate, ParametrisedCusp) {
  // (t^2, t^3) -> u^3 - v^2 up to a unit
  using P = MPoly<Q5>;
  TPoly<Q5> tx{P(0), P(0), P(1)}, ty{P(0), P(0), P(0), P(1)};
  const P F = eliminate_t(tx, ty, 0, 1);
  const P u = P::var(0), v = P::var(1);
  EXPECT_EQ(F.monic(), (u.pow(3) - v.pow(2)).monic());
}

TEST(PowerSeries, OrderAndPowers) {
  auto s = PowerSeries<Q5>::monomial(Q5(1), 3) + PowerSeries<Q5>::monomial(Q5(2), 5);
  EXPECT_EQ(t_order(s.pow(3)), 9);
  EXPECT_EQ(s.pow(3).coeff(11), Q5(6));
  EXPECT_EQ(s.pow(2).coeff(10), Q5(4));
}

TEST(Linalg, RankAndNullspace) {
  const Q5 z = Q5::zeta();
  Matrix<Q5> m{{Q5(1), z, Q5(3)}, {Q5(2), z * Q5(2), Q5(6)}, {Q5(1), Q5(0), z}};
  EXPECT_EQ(rank(m), 2);
  const auto ns = nullspace(m, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& v : mat_vec(m, ns[0])) EXPECT_TRUE(v.is_zero());
}
