#include "ncdirac/scalars.hpp"

#include <gtest/gtest.h>

#include <random>

#include "random_poly.hpp"

using namespace ncdirac;

namespace {

const ExactScalar I = ExactScalar::i();
const ParamPoly ell = sym(Symbol::ell);
const ParamPoly rho = sym(Symbol::rho);

}  // namespace

TEST(ExactScalar, ArithmeticStaysCanonical) {
  ExactScalar a(make_rational(2, 4), make_rational(-3, 6));
  EXPECT_EQ(a.re(), make_rational(1, 2));
  EXPECT_EQ(a.im(), make_rational(-1, 2));
  EXPECT_EQ(I * I, ExactScalar(-1));
  EXPECT_EQ(a * a.inverse(), ExactScalar(1));
  EXPECT_EQ((ExactScalar(1) + I).conj(), ExactScalar(1) - I);
  EXPECT_THROW(ExactScalar().inverse(), std::domain_error);
}

TEST(ExactScalar, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.01"), make_rational(1, 100));
  EXPECT_EQ(parse_rational("-2.5e-3"), make_rational(-1, 400));
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
  EXPECT_EQ(parse_rational("1e2"), Rational(100));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(ParamPoly, NormalizeExamples) {
  EXPECT_TRUE(normalize(ell * rho - rho * ell).is_zero());
  ParamPoly sum = ParamPoly(ExactScalar(1) + I) * ell + ParamPoly(ExactScalar(1) - I) * ell;
  EXPECT_EQ(normalize(sum), ParamPoly(2) * ell);
  ParamPoly sq = (ell + rho).pow(2);
  EXPECT_EQ(sq, sym(Symbol::ell, 2) + ParamPoly(2) * ell * rho + sym(Symbol::rho, 2));
  EXPECT_EQ(sq.size(), 3u);
}

TEST(ParamPoly, ZeroCoefficientsAreNeverStored) {
  ParamPoly p = ell + rho;
  p -= ell;
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p, rho);
  EXPECT_TRUE((ParamPoly(0) * ell).is_zero());
}

TEST(ParamPoly, DegreeQueries) {
  ParamPoly p = ParamPoly(3) * sym(Symbol::ell, 2) * rho + sym(Symbol::ell, 5);
  EXPECT_EQ(p.degree_in(Symbol::ell), 5u);
  EXPECT_EQ(p.min_degree_in(Symbol::ell), 2u);
  EXPECT_FALSE(ParamPoly().min_degree_in(Symbol::ell).has_value());
  EXPECT_EQ(p.coefficient_of(Symbol::ell, 2), ParamPoly(3) * rho);
}

TEST(ParamPoly, Substitute) {
  EXPECT_TRUE(substitute(sym(Symbol::ell, 2) * rho, {{Symbol::rho, ParamPoly(0)}}).is_zero());

  // mu^2 ell / 2 at mu = 1, ell = 2
  ParamPoly mass = ParamPoly(ExactScalar(make_rational(1, 2))) * sym(Symbol::mu, 2) * ell;
  EXPECT_EQ(substitute(mass, {{Symbol::mu, ParamPoly(1)}, {Symbol::ell, ParamPoly(2)}}), ParamPoly(1));

  // Rest-mass symbol m with m * ell = 2: m^2 at ell = 1/2 becomes 16.
  ParamPoly m2 = sym(Symbol::m, 2);
  ParamPoly m_of_ell = ParamPoly(ExactScalar(4));
  EXPECT_EQ(substitute(m2, {{Symbol::m, m_of_ell}}), ParamPoly(16));

  // Polynomial-valued binding.
  EXPECT_EQ(substitute(sym(Symbol::m, 2), {{Symbol::m, ParamPoly(2) * sym(Symbol::mu)}}),
            ParamPoly(4) * sym(Symbol::mu, 2));
}

TEST(ParamPoly, SubstituteRejectsReintroducedSymbols) {
  EXPECT_THROW(substitute(ell, {{Symbol::ell, rho}, {Symbol::rho, ParamPoly(1)}}), std::invalid_argument);
  EXPECT_THROW(substitute(ell, {{Symbol::ell, ell + ParamPoly(1)}}), std::invalid_argument);
}

TEST(ParamPoly, RadiusReduction) {
  ParamPoly r = sym(Symbol::r);
  EXPECT_EQ(reduce_radius(r * r), rho);
  EXPECT_EQ(reduce_radius(r.pow(5) * ell), sym(Symbol::rho, 2) * r * ell);
}

TEST(TruncatedSeries, Truncate) {
  ParamPoly p = ParamPoly(1) + ell + sym(Symbol::ell, 2) + sym(Symbol::ell, 3);
  TruncatedSeries s = series_truncate(p, 2);
  EXPECT_EQ(s.poly(), ParamPoly(1) + ell + sym(Symbol::ell, 2));
  EXPECT_EQ(s.order(), 2u);
  TruncatedSeries z = series_truncate(ParamPoly(), 5);
  EXPECT_TRUE(z.poly().is_zero());
  EXPECT_EQ(z.order(), 5u);
}

TEST(TruncatedSeries, GeometricInverse) {
  // d is played by k0.
  ParamPoly d = sym(Symbol::k0);
  ParamPoly base = ParamPoly(1) + ParamPoly(I) * ell * d;
  TruncatedSeries inv = series_truncate(base, 3).inverse();

  // Oracle: (1 + i ell d) * inv must be 1 up to ell^4.
  ParamPoly back = base * inv.poly() - ParamPoly(1);
  ASSERT_TRUE(back.min_degree_in(Symbol::ell).has_value());
  EXPECT_GE(*back.min_degree_in(Symbol::ell), 4u);

  ParamPoly expected = ParamPoly(1) - ParamPoly(I) * ell * d - sym(Symbol::ell, 2) * d.pow(2) +
                       ParamPoly(I) * sym(Symbol::ell, 3) * d.pow(3);
  EXPECT_EQ(inv.poly(), expected);
}

TEST(TruncatedSeries, ProductOrderIsMinimum) {
  TruncatedSeries a(ParamPoly(1) + ell, 5);
  TruncatedSeries b(ParamPoly(1) + ell, 2);
  TruncatedSeries c = a * b;
  EXPECT_EQ(c.order(), 2u);
  EXPECT_EQ(c.poly(), ParamPoly(1) + ParamPoly(2) * ell + sym(Symbol::ell, 2));
}

// ---------------------------------------------------------------------------
// Properties

TEST(ParamPolyProperty, RingAxioms) {
  std::mt19937_64 rng(20240611);
  for (int iter = 0; iter < 1000; ++iter) {
    ParamPoly a = testing_support::random_poly(rng);
    ParamPoly b = testing_support::random_poly(rng);
    ParamPoly c = testing_support::random_poly(rng);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a + b) * c, a * c + b * c);
    ASSERT_TRUE((a + (-a)).is_zero());
    ASSERT_EQ(a * b, b * a);
  }
}

TEST(ParamPolyProperty, NormalizeIdempotent) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    ParamPoly a = testing_support::random_poly(rng) * testing_support::random_poly(rng);
    ASSERT_EQ(normalize(normalize(a)), normalize(a));
    ASSERT_EQ(normalize(a), a);
  }
}

TEST(ParamPolyProperty, TruncatedProductMatchesTruncatedExactProduct) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<unsigned> order(0, 5);
  for (int iter = 0; iter < 300; ++iter) {
    ParamPoly a = testing_support::random_poly(rng);
    ParamPoly b = testing_support::random_poly(rng);
    unsigned na = order(rng), nb = order(rng);
    TruncatedSeries prod = TruncatedSeries(a, na) * TruncatedSeries(b, nb);
    unsigned n = std::min(na, nb);
    ASSERT_EQ(prod.order(), n);
    ASSERT_EQ(prod.poly(), (a * b).truncated(Symbol::ell, n));
  }
}
