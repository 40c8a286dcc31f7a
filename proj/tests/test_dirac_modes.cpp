#include "ncdirac/dirac_modes.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ncdirac;

namespace {

const ExactScalar I = ExactScalar::i();

ExactMatrix scaled(ExactMatrix m, const ExactScalar& s) { return m.scale(s); }

Rational q(long n, long d = 1) { return make_rational(n, d); }

}  // namespace

TEST(DiracMatrix, ReferenceFrameForms) {
  for (const Rational& ell : {q(1, 2), q(1), q(2)}) {
    GammaRep minus = build_majorana_rep(-1);
    const Rational m = 2 / ell;
    EXPECT_EQ(dirac_matrix(minus, ell, {m, 0, 0, 0}),
              scaled(minus.gamma[0] + scaled(minus.gamma5, I), ExactScalar(m)));
    GammaRep plus = build_majorana_rep(1);
    EXPECT_EQ(dirac_matrix(plus, ell, {0, 0, 0, m}), scaled(plus.gamma[3] - plus.gamma5, ExactScalar(Rational(-m))));
    EXPECT_TRUE(dirac_matrix(plus, ell, {0, 0, 0, 0}).is_zero());
  }
  EXPECT_THROW(dirac_matrix(1, q(0), {1, 0, 0, 0}), std::invalid_argument);
}

TEST(DiracMatrix, SquaredOperatorIdentity) {
  for (int eps5 : {1, -1}) EXPECT_TRUE(squared_operator_residual(eps5).is_zero());
}

TEST(DiracMatrix, FloatMatchesExact) {
  GammaRep rep = build_majorana_rep(-1);
  const FourVector k{q(3, 2), q(-1, 3), q(2), q(1, 5)};
  const ComplexMatrix exact = to_eigen(dirac_matrix(rep, q(3, 4), k));
  EXPECT_LT((dirac_matrix(rep, 0.75, to_eigen(k)) - exact).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Dispersion, RootsPerSignature) {
  for (const Rational& ell : {q(1, 2), q(1), q(2)}) {
    EXPECT_EQ(dispersion_roots(ell, -1), (std::vector<Rational>{0, 4 / (ell * ell)}));
    EXPECT_EQ(dispersion_roots(ell, 1), (std::vector<Rational>{-4 / (ell * ell), 0}));
  }
  EXPECT_EQ(dispersion_roots(q(2), -1), (std::vector<Rational>{0, 1}));
  EXPECT_EQ(dispersion_roots(q(1), 1), (std::vector<Rational>{-4, 0}));
  // ell = 2/m gives the heavy root m^2.
  for (long m = 1; m < 6; ++m) EXPECT_EQ(dispersion_roots(q(2, m), -1).back(), Rational(m * m));
}

TEST(Dispersion, DeterminantOracle) {
  // Independent check: det D(k) = (k^2 + eps5 ell^2 (k^2)^2 / 4)^2 at exact points.
  for (int eps5 : {1, -1}) {
    const Rational ell = q(2, 3);
    for (const FourVector& k : {FourVector{q(1), q(2), q(0), q(1, 2)}, FourVector{q(3), q(0), q(1), q(0)}}) {
      const Rational k2 = minkowski_square(k);
      const Rational f = k2 + Rational(eps5 * ell * ell * k2 * k2 / 4);
      EXPECT_EQ(determinant(dirac_matrix(eps5, ell, k)), ExactScalar(Rational(f * f)));
    }
  }
}

TEST(ReferenceSolutions, HeavyDiracBlockForm) {
  for (int sign : {1, -1}) {
    SpinorSolution s = reference_solutions(q(1), -1, Branch::Heavy, sign);
    ASSERT_EQ(s.basis.size(), 2u);
    EXPECT_EQ(s.reality, RealityClass::Dirac);
    EXPECT_EQ(s.k2, Rational(4));
    // (a, sign * i a) with a = e1, e2.
    const ExactScalar o(1), z(0), ia = ExactScalar(sign) * I;
    EXPECT_EQ(s.basis[0], (ExactVector{o, z, ia, z}));
    EXPECT_EQ(s.basis[1], (ExactVector{z, o, z, ia}));
    for (const auto& v : s.basis) EXPECT_TRUE(residual_is_zero(s.k, v, s.ell, -1));
  }
}

TEST(ReferenceSolutions, HeavyMajoranaRealBasis) {
  for (const Rational& ell : {q(1, 2), q(1), q(2)}) {
    SpinorSolution s = reference_solutions(ell, 1, Branch::Heavy);
    const ExactScalar o(1), z(0);
    ASSERT_EQ(s.basis.size(), 2u);
    EXPECT_EQ(s.basis[0], (ExactVector{o, o, z, z}));
    EXPECT_EQ(s.basis[1], (ExactVector{z, z, o, -o}));
    EXPECT_EQ(s.reality, RealityClass::Majorana);
    EXPECT_EQ(s.k2, Rational(-4 / (ell * ell)));
  }
}

TEST(ReferenceSolutions, MasslessBranch) {
  for (int eps5 : {1, -1}) {
    SpinorSolution s = reference_solutions(q(1), eps5, Branch::Massless);
    EXPECT_EQ(s.basis.size(), 2u);
    EXPECT_EQ(s.k2, Rational(0));
    // k = (1,0,0,1) lowers to (1,0,0,-1): the operator is gamma^0 - gamma^3.
    GammaRep rep = build_majorana_rep(eps5);
    EXPECT_EQ(dirac_matrix(rep, q(1), s.k), rep.gamma[0] - rep.gamma[3]);
    for (const auto& v : s.basis) EXPECT_TRUE(residual_is_zero(s.k, v, s.ell, eps5));
  }
}

TEST(Residual, Examples) {
  SpinorSolution s = reference_solutions(q(1), -1, Branch::Heavy);
  const Eigen::Vector4d k = to_eigen(s.k);
  ComplexVector u = to_eigen(s.basis[0]);
  EXPECT_EQ(residual(k, u, 1.0, -1), 0.0);
  ComplexVector w(4);
  w << 1.0, std::complex<double>(0.5, -1.0), -0.25, 2.0;
  const Eigen::Vector4d off(1.3, 0.2, -0.4, 0.1);
  const double r = residual(off, w, 1.0, -1);
  EXPECT_GT(r, 1e-3);
  EXPECT_NEAR(residual(off, std::complex<double>(0.0, 17.0) * w, 1.0, -1), r, 1e-12);
  EXPECT_THROW(residual(off, ComplexVector::Zero(4), 1.0, -1), std::invalid_argument);
  EXPECT_THROW(residual_is_zero(s.k, ExactVector(4), q(1), -1), std::invalid_argument);
}

TEST(Boost, ZeroAndSingleRapidity) {
  SpinorSolution s = reference_solutions(q(1), -1, Branch::Heavy);
  BoostedSolution same = boost_solution(s, BoostParameters::Zero());
  EXPECT_LT((same.k - to_eigen(s.k)).norm(), 1e-15);
  EXPECT_LT((same.basis[0] - to_eigen(s.basis[0])).norm(), 1e-15);
  BoostedSolution b = boost_solution(s, rapidity(1, 0.7));
  EXPECT_LT(b.max_residual, 1e-10);
  EXPECT_NEAR(b.k(0), 2.0 * std::cosh(0.7), 1e-12);
  EXPECT_NEAR(b.k2, 4.0, 1e-12);
}

TEST(Boost, WrongMomentumIsDetected) {
  // Using S^-1 instead of S moves the spinor off shell at Lambda k.
  SpinorSolution s = reference_solutions(q(1), -1, Branch::Heavy);
  const BoostParameters w = rapidity(2, 0.9);
  const ComplexVector u = boost_matrix(build_majorana_rep(-1), w).inverse() * to_eigen(s.basis[0]);
  const Eigen::Vector4d k = lorentz_matrix(w) * to_eigen(s.k);
  EXPECT_GT(residual(k, u, 1.0, -1), 1e-3);
}

// ---------------------------------------------------------------------------
// Properties

TEST(DiracProperty, NullspaceDimensionOnAndOffBranch) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int eps5 : {1, -1}) {
    for (int iter = 0; iter < 60; ++iter) {
      const Rational ell = q(1 + (iter % 3), 2);
      FourVector k{q(d(rng), 3), q(d(rng), 4), q(d(rng), 2), q(d(rng), 5)};
      const Rational k2 = minkowski_square(k);
      const Rational heavy = Rational(-eps5 * 4 / (ell * ell));
      const std::size_t dim = nullspace(dirac_matrix(eps5, ell, k)).size();
      const bool zero_k = k[0] == 0 && k[1] == 0 && k[2] == 0 && k[3] == 0;
      if (zero_k) {
        ASSERT_EQ(dim, 4u);
      } else if (k2 == 0 || k2 == heavy) {
        ASSERT_EQ(dim, 2u);
      } else {
        ASSERT_EQ(dim, 0u);
      }
    }
  }
}

TEST(DiracProperty, BoostedHeavySolutionsStayOnShell) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> axis(1, 3);
  for (int eps5 : {1, -1}) {
    SpinorSolution s = reference_solutions(q(1, 2), eps5, Branch::Heavy);
    const double k2 = s.k2.get_d();
    for (int iter = 0; iter < 100; ++iter) {
      BoostedSolution b = boost_solution(s, rapidity(axis(rng), u(rng)));
      ASSERT_LT(b.max_residual, 1e-10);
      ASSERT_LT(std::abs(b.k2 - k2) / std::abs(k2), 1e-10);
    }
  }
}
