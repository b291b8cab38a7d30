#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "metafun/numerics/quadrature.hpp"
#include "metafun/numerics/roots.hpp"

using namespace metafun;
using namespace metafun::numerics;

TEST(Quadrature, Polynomial) {
  const auto r = integrate([](double x) { return 3.0 * x * x; }, 0.0, 2.0);
  EXPECT_NEAR(r.value, 8.0, 1e-13);
}

TEST(Quadrature, Oscillatory) {
  const auto r = integrate([](double x) { return std::sin(50.0 * x) * std::sin(50.0 * x); }, 0.0, std::numbers::pi);
  EXPECT_NEAR(r.value, std::numbers::pi / 2.0, 1e-11);
  EXPECT_GT(r.intervals, 1);
}

TEST(Quadrature, VectorValued) {
  const auto r = integrate(
      [](double x) { return std::array<double, 3>{1.0, std::sin(x) * std::sin(x), std::cos(x) * std::cos(x)}; },
      0.0, 1.0);
  EXPECT_NEAR(r.value[0], 1.0, 1e-14);
  EXPECT_NEAR(r.value[1] + r.value[2], 1.0, 1e-14);
  EXPECT_NEAR(r.value[1], 0.5 - std::sin(2.0) / 4.0, 1e-14);
}

TEST(Quadrature, ReversedBounds) {
  const auto r = integrate([](double x) { return std::exp(x); }, 1.0, 0.0);
  EXPECT_NEAR(r.value, 1.0 - std::exp(1.0), 1e-13);
}

TEST(Roots, BrentFindsCubeRoot) {
  const auto r = brent([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
  EXPECT_NEAR(r.x, std::cbrt(2.0), 1e-14);
}

TEST(Roots, BrentRejectsNonBracket) {
  EXPECT_THROW(brent([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);
}

TEST(Roots, FirstSignChangeIsLeftmost) {
  const auto b = first_sign_change([](double x) { return std::sin(x); }, 0.5, 10.0, 200);
  ASSERT_TRUE(b.has_value());
  EXPECT_LE(b->a, std::numbers::pi);
  EXPECT_GE(b->b, std::numbers::pi);
}

TEST(Roots, NoSignChange) {
  EXPECT_FALSE(first_sign_change([](double x) { return 1.0 + x * x; }, -1.0, 1.0, 50).has_value());
}
