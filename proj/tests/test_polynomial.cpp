#include "rabi/errors.hpp"
#include "rabi/ode_spec.hpp"
#include "rabi/polynomial.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rabi;

TEST(Polynomial, EvaluatesAndDifferentiates) {
  const Polynomial p{1.0, -2.0, 3.0};  // 1 - 2z + 3z^2
  EXPECT_DOUBLE_EQ(p(2.0), 9.0);
  EXPECT_DOUBLE_EQ(p.derivative()(2.0), 10.0);
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_TRUE(Polynomial({0.0, 0.0}).is_zero());
}

TEST(Polynomial, ShiftMatchesDirectEvaluation) {
  const Polynomial p{0.3, -1.1, 0.7, 2.0, -0.5};
  const Polynomial s = p.shifted(0.8);
  for (double t : {-1.0, -0.2, 0.0, 0.4, 1.3}) EXPECT_NEAR(s(t), p(0.8 + t), 1e-12);
}

TEST(Polynomial, DeflationLeavesRemainderAtRoot) {
  const Polynomial p = Polynomial{-0.49, 0.0, 1.0};  // z^2 - 0.49
  double rem = 1.0;
  const Polynomial q = p.deflate(0.7, rem);
  EXPECT_NEAR(rem, 0.0, 1e-15);
  EXPECT_NEAR(q(0.0), 0.7, 1e-15);
  p.deflate(0.5, rem);
  EXPECT_NEAR(rem, p(0.5), 1e-15);
}

TEST(Polynomial, Arithmetic) {
  const Polynomial a{1.0, 1.0}, b{-1.0, 1.0};
  const Polynomial c = a * b;
  EXPECT_DOUBLE_EQ(c(3.0), 8.0);
  EXPECT_DOUBLE_EQ((a + b)(3.0), 6.0);
  EXPECT_DOUBLE_EQ((2.0 * a)(3.0), 8.0);
}

TEST(RationalTaylor, CancelsSimplePole) {
  // t * 1 / (z (z - 1)) about 0 = -1 / (1 - t) = -(1 + t + t^2 + ...)
  const auto c = rational_taylor(Polynomial{1.0}, Polynomial{0.0, -1.0, 1.0}, 0.0, 1, 5);
  for (double v : c) EXPECT_NEAR(v, -1.0, 1e-14);
  EXPECT_THROW(rational_taylor(Polynomial{1.0}, Polynomial{0.0, 0.0, 1.0}, 0.0, 1, 3), InvalidOde);
}

TEST(OdeSpec, RejectsDeclaredPointThatIsNoPole) {
  // v'' - v = 0 has no finite singular point.
  EXPECT_THROW(OdeSpec(Polynomial{}, Polynomial{1.0}, Polynomial{-1.0}, Polynomial{1.0}, {0.0}), InvalidOde);
}

TEST(OdeSpec, RejectsUndeclaredPole) {
  EXPECT_THROW(OdeSpec(Polynomial{1.0}, Polynomial{0.0, -1.0, 1.0}, Polynomial{}, Polynomial{1.0}, {0.0}),
               InvalidOde);
}

TEST(OdeSpec, RejectsIrregularPoint) {
  // q = 1/z^3 is irregular at 0.
  EXPECT_THROW(OdeSpec(Polynomial{}, Polynomial{1.0}, Polynomial{1.0}, Polynomial{0.0, 0.0, 0.0, 1.0}, {0.0}),
               InvalidOde);
}

TEST(OdeSpec, RadiiAndLookup) {
  const OdeSpec ode(Polynomial{1.0}, Polynomial{0.0, -1.0, 1.0}, Polynomial{}, Polynomial{1.0}, {0.0, 1.0});
  EXPECT_EQ(ode.find_point(1.0), 1);
  EXPECT_EQ(ode.find_point(0.5), -1);
  EXPECT_DOUBLE_EQ(ode.radius(0), 1.0);
  EXPECT_DOUBLE_EQ(ode.radius(1), 1.0);
}
