#include <gtest/gtest.h>

#include <cmath>

#include "wpe/jet.hpp"

namespace wpe {
namespace {

TEST(Jet, ProductAndQuotientMatchHandDerivatives) {
  // f(x, y) = x^2 y / (1 + y) at (1.5, 0.5)
  const double x = 1.5, y = 0.5;
  const Jet2 X = Jet2::variable(x, 0), Y = Jet2::variable(y, 1);
  const Jet2 f = X * X * Y / (1.0 + Y);

  const double w = y / (1.0 + y), wy = 1.0 / ((1.0 + y) * (1.0 + y)), wyy = -2.0 / std::pow(1.0 + y, 3);
  EXPECT_NEAR(f.val, x * x * w, 1e-15);
  EXPECT_NEAR(f.d[0], 2.0 * x * w, 1e-15);
  EXPECT_NEAR(f.d[1], x * x * wy, 1e-15);
  EXPECT_NEAR(f.hess(0, 0), 2.0 * w, 1e-15);
  EXPECT_NEAR(f.hess(0, 1), 2.0 * x * wy, 1e-15);
  EXPECT_NEAR(f.hess(1, 0), f.hess(0, 1), 0.0);
  EXPECT_NEAR(f.hess(1, 1), x * x * wyy, 1e-14);
}

TEST(Jet, ElementaryFunctions) {
  const double t = 0.7;
  const Jet1 T = Jet1::variable(t, 0);
  const Jet1 c = cosh(T);
  EXPECT_DOUBLE_EQ(c.d[0], std::sinh(t));
  EXPECT_DOUBLE_EQ(c.dd[0], std::cosh(t));
  const Jet1 l = log(T);
  EXPECT_DOUBLE_EQ(l.d[0], 1.0 / t);
  EXPECT_DOUBLE_EQ(l.dd[0], -1.0 / (t * t));
  const Jet1 p = pow(T, 2.5);
  EXPECT_NEAR(p.val, std::pow(t, 2.5), 1e-15);
  EXPECT_NEAR(p.d[0], 2.5 * std::pow(t, 1.5), 1e-15);
  EXPECT_NEAR(p.dd[0], 3.75 * std::pow(t, 0.5), 1e-15);
  const Jet1 s = sqrt(T);
  EXPECT_NEAR(s.dd[0], -0.25 * std::pow(t, -1.5), 1e-15);
}

TEST(Jet, ComposeAppliesChainRule) {
  // outer(t) = t^3 at t = inner(x, y) = x y
  const Jet2 inner = Jet2::variable(2.0, 0) * Jet2::variable(3.0, 1);
  const Jet1 outer = pow(Jet1::variable(inner.val, 0), 3.0);
  const Jet2 direct = pow(inner, 3.0);
  const Jet2 composed = compose(outer, inner);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(composed.d[i], direct.d[i], 1e-10);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(composed.dd[i], direct.dd[i], 1e-10);
}

}  // namespace
}  // namespace wpe
