#include "cyweyl/errors.hpp"
#include "cyweyl/polynomial.hpp"

#include <gtest/gtest.h>

using namespace cyweyl;

TEST(Polynomial, ParsesAndEvaluates) {
  const Polynomial p = Polynomial::parse("1 + 0.1*y1 - 3*y1^2*y2 + (y1 - y2)^2 / 2");
  const double y1 = 0.7, y2 = -1.3;
  EXPECT_NEAR(p(y1, y2), 1 + 0.1 * y1 - 3 * y1 * y1 * y2 + (y1 - y2) * (y1 - y2) / 2, 1e-14);
  EXPECT_DOUBLE_EQ(Polynomial::parse("2.5e-1")(0.0, 0.0), 0.25);
  EXPECT_DOUBLE_EQ(Polynomial::parse("--y1")(2.0, 0.0), 2.0);
}

TEST(Polynomial, ExactDerivatives) {
  const Polynomial p = Polynomial::parse("y1^3*y2 + 2*y2^2 - y1");
  const Eigen::Vector2d y(1.5, -0.5);
  EXPECT_NEAR(p.derivative(1)(y), 3 * 1.5 * 1.5 * -0.5 - 1, 1e-14);
  EXPECT_NEAR(p.gradient(y)(1), 1.5 * 1.5 * 1.5 + 4 * -0.5, 1e-14);
  const Eigen::Matrix2d h = p.hessian(y);
  EXPECT_NEAR(h(0, 0), 6 * 1.5 * -0.5, 1e-14);
  EXPECT_NEAR(h(0, 1), 3 * 1.5 * 1.5, 1e-14);
  EXPECT_NEAR(h(1, 0), h(0, 1), 0.0);
  EXPECT_NEAR(h(1, 1), 4.0, 1e-14);
}

TEST(Polynomial, StructureQueries) {
  const Polynomial p = Polynomial::parse("y1^4 - y1^4 + y2^2 + 3");
  EXPECT_EQ(p.degree_in(1), 0);
  EXPECT_EQ(p.degree_in(2), 2);
  EXPECT_FALSE(p.is_constant());
  EXPECT_TRUE(Polynomial::parse("(y1 + 1) - y1").is_constant());
  EXPECT_EQ(p.terms().size(), 2u);
}

TEST(Polynomial, ArithmeticMatchesEvaluation) {
  const Polynomial a = Polynomial::parse("y1 + 2*y2"), b = Polynomial::parse("y1*y2 - 1");
  const Eigen::Vector2d y(0.3, 0.8);
  EXPECT_NEAR((a * b)(y), a(y) * b(y), 1e-15);
  EXPECT_NEAR((a - b)(y), a(y) - b(y), 1e-15);
  EXPECT_NEAR((-a + b)(y), b(y) - a(y), 1e-15);
  EXPECT_NEAR(Polynomial::parse(a.to_string())(y), a(y), 1e-15);
}

TEST(Polynomial, RejectsMalformedInput) {
  for (const char* bad : {"", "y3", "y1 +", "y1 / y2", "y1^-1", "y1^1.5", "(y1", "y1 y2", "sin(y1)"})
    EXPECT_THROW(Polynomial::parse(bad), ParseError) << bad;
}
