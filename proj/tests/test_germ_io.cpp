#include <gtest/gtest.h>

#include <nashe8/germ_io.hpp>

using namespace nashe8;

TEST(GermIO, ParsesRationalAndCyclotomicCoefficients) {
  const auto g = parse_germ_string(
      "t^2 ; t^3 ; 0\n"
      "# comment\n"
      "\n"
      "(1+z5^2)*t - 1/2*t^3 ; 0 ; z5*t^2\n",
      32);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0][0].coeff(2), Q60(1));
  EXPECT_EQ(g[0][1].coeff(3), Q60(1));
  EXPECT_TRUE(g[0][2].coeffs().empty());
  const Q60 w = Q5::zeta().embed<60>();
  EXPECT_EQ(g[1][0].coeff(1), Q60(1) + w * w);
  EXPECT_EQ(g[1][0].coeff(3), Q60(mpq_class(-1, 2)));
  EXPECT_EQ(g[1][2].coeff(2), w);
}

TEST(GermIO, SignsAndBareTerms) {
  const auto g = parse_germ_string("-t ; -2*z5^4*t^5 + t^7 ; -(1/3 - z5)*t^2\n", 16);
  EXPECT_EQ(g[0][0].coeff(1), Q60(-1));
  const Q60 w = Q5::zeta().embed<60>();
  EXPECT_EQ(g[0][1].coeff(5), Q60(-2) * w.pow(4));
  EXPECT_EQ(g[0][1].coeff(7), Q60(1));
  EXPECT_EQ(g[0][2].coeff(2), -(Q60(mpq_class(1, 3)) - w));
}

TEST(GermIO, TruncatesAtT) {
  const auto g = parse_germ_string("t ; t^40 ; 0\n", 16);
  EXPECT_TRUE(g[0][1].coeffs().empty());
}

TEST(GermIO, Errors) {
  auto line_of = [](const std::string& s) {
    try {
      parse_germ_string(s, 32);
    } catch (const GermParseError& e) {
      return e.line;
    }
    return -1;
  };
  EXPECT_EQ(line_of("t ; t\n"), 1);                          // two series
  EXPECT_EQ(line_of("# c\nt ; t ; t ; t\n"), 2);             // four series
  EXPECT_EQ(line_of("1 + t ; t ; 0\n"), 1);                  // not through the origin
  EXPECT_EQ(line_of("t ; 1/0*t ; 0\n"), 1);                  // zero denominator
  EXPECT_EQ(line_of("t ; t^ ; 0\n"), 1);                     // missing exponent
  EXPECT_EQ(line_of("t ; (1 + z5 * t ; 0\n"), 1);            // unbalanced
  EXPECT_EQ(line_of("t^2 ; t^4 ; 0\n"), 1);                  // double cover
  EXPECT_EQ(line_of("0 ; 0 ; 0\n"), 1);                      // constant
  EXPECT_EQ(line_of("\n# only comments\n"), 2);              // empty
  EXPECT_EQ(line_of("t ; y ; 0\n"), 1);
}

TEST(GermIO, SurfaceMembership) {
  // (t^3, -t^2, 0): x^2 + y^3 = 0
  EXPECT_TRUE(germ_on_surface(parse_germ_string("t^3 ; -t^2 ; 0\n", 32)));
  EXPECT_FALSE(germ_on_surface(parse_germ_string("t^3 ; t^2 ; 0\n", 32)));
  // x^2 + z^5 = 0
  EXPECT_TRUE(germ_on_surface(parse_germ_string("t^5 ; 0 ; -t^2\n", 64)));
}

TEST(GermIO, CuspThroughOracle) {
  const auto g = parse_germ_string("t^3 ; -t^2 ; 0\n", 64);
  EXPECT_EQ(delta_oracle(g).delta, 1);
}
