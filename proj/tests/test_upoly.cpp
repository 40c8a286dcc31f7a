#include "ncdirac/upoly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ncdirac;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

UPoly from_roots(const std::vector<Rational>& roots) {
  UPoly p(std::vector<Rational>{1});
  for (const auto& r : roots) {
    std::vector<Rational> c(p.coeffs().size() + 1, Rational(0));
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
      c[i + 1] += p.coeffs()[i];
      c[i] -= p.coeffs()[i] * r;
    }
    p = UPoly(c);
  }
  return p;
}

}  // namespace

TEST(UPoly, EvaluateAndDerivative) {
  const UPoly p({q(1), q(-3), q(0), q(2)});  // 1 - 3x + 2x^3
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p(q(2)), Rational(11));
  EXPECT_EQ(p.derivative(), UPoly({q(-3), q(0), q(6)}));
  EXPECT_TRUE(UPoly({q(0), q(0)}).is_zero());
}

TEST(UPoly, DivisionAndGcd) {
  const UPoly a = from_roots({q(1), q(2), q(-3)});
  const UPoly b = from_roots({q(2), q(5)});
  auto [quot, rem] = UPoly::divmod(a, from_roots({q(1)}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(quot, from_roots({q(2), q(-3)}));
  EXPECT_EQ(UPoly::gcd(a, b), from_roots({q(2)}));
  EXPECT_THROW(UPoly::divmod(a, UPoly()), std::domain_error);
}

TEST(UPoly, InterpolationRecoversPolynomial) {
  const UPoly p({q(3, 2), q(0), q(-7), q(1, 3), q(0), q(2)});
  std::vector<Rational> xs, ys;
  for (long t = -2; t <= 4; ++t) {
    xs.emplace_back(t);
    ys.push_back(p(Rational(t)));
  }
  EXPECT_EQ(interpolate(xs, ys), p);
  EXPECT_THROW(interpolate({q(1)}, {}), std::invalid_argument);
}

TEST(UPoly, SquareFreePart) {
  const UPoly p = from_roots({q(1), q(1), q(1, 2), q(-4), q(-4), q(-4)});
  EXPECT_EQ(square_free(p), from_roots({q(1), q(1, 2), q(-4)}));
}

TEST(UPoly, SimplestRational) {
  EXPECT_EQ(simplest_between(q(3, 10), q(4, 10)), q(1, 3));
  EXPECT_EQ(simplest_between(q(-1, 2), q(1, 7)), q(0));
  EXPECT_EQ(simplest_between(q(-4, 10), q(-3, 10)), q(-1, 3));
  EXPECT_EQ(simplest_between(q(7, 3), q(7, 3)), q(7, 3));
  EXPECT_EQ(simplest_between(q(21, 10), q(39, 10)), q(3));
}

TEST(UPoly, IsolatesRationalRootsExactly) {
  const auto roots = isolate_real_roots(from_roots({q(-16), q(1, 7), q(3), q(1000)}));
  ASSERT_EQ(roots.size(), 4u);
  const std::vector<Rational> expected{q(-16), q(1, 7), q(3), q(1000)};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(roots[i].exact);
    EXPECT_EQ(roots[i].lo, expected[i]);
  }
}

TEST(UPoly, BracketsIrrationalRoots) {
  // x^2 - 2 and a root of small magnitude: x^2 - 2e-12
  const auto r2 = isolate_real_roots(UPoly({q(-2), q(0), q(1)}));
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_FALSE(r2[1].exact);
  EXPECT_NEAR(r2[1].value(), std::sqrt(2.0), 1e-15);
  EXPECT_LT(r2[1].lo * r2[1].lo, Rational(2));
  EXPECT_GT(r2[1].hi * r2[1].hi, Rational(2));
  const auto small = isolate_real_roots(UPoly({q(-2, 1000000) * q(1, 1000000), q(0), q(1)}));
  ASSERT_EQ(small.size(), 2u);
  EXPECT_NEAR(small[1].value() / (std::sqrt(2.0) * 1e-6), 1.0, 1e-14);
  EXPECT_TRUE(isolate_real_roots(UPoly({q(1), q(0), q(1)})).empty());
}

TEST(UPoly, ReportsNonConvergence) {
  EXPECT_THROW(isolate_real_roots(UPoly({q(-2), q(0), q(1)}), q(1, 1000000), 3), RootIsolationError);
}

// ---------------------------------------------------------------------------
// Properties

TEST(UPolyProperty, RootCountMatchesConstruction) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 9);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Rational> roots;
    for (int i = 0; i < 5; ++i) roots.push_back(q(num(rng), den(rng)));
    const UPoly p = from_roots(roots);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    const auto found = isolate_real_roots(square_free(p));
    ASSERT_EQ(found.size(), roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
      ASSERT_TRUE(found[i].exact);
      ASSERT_EQ(found[i].lo, roots[i]);
    }
  }
}
