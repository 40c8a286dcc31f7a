#pragma once

// Momentum-space extended Dirac operator, its dispersion branches,
// reference-frame spinors and boosts.

#include "ncdirac/clifford.hpp"
#include "ncdirac/matrix.hpp"
#include "ncdirac/scalars.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncdirac {

/// Upper-index momentum k^mu.
using FourVector = std::array<Rational, 4>;

inline Rational minkowski_square(const FourVector& k) { return k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3]; }

inline double minkowski_square(const Eigen::Vector4d& k) {
  return k(0) * k(0) - k(1) * k(1) - k(2) * k(2) - k(3) * k(3);
}

inline void require_positive_length(const Rational& ell) {
  if (sgn(ell) <= 0) throw std::invalid_argument("ell must be positive");
}

/// Mass-term matrix multiplying (ell/2) k^2: -gamma^5 for eps5 = +1,
/// +i gamma^5 for eps5 = -1.
inline ExactMatrix mass_gamma(const GammaRep& rep) {
  ExactMatrix g = rep.gamma5;
  return rep.eps5 == 1 ? g.scale(ExactScalar(-1)) : g.scale(ExactScalar::i());
}

/// gamma^mu k_mu with k_mu = eta_{mu nu} k^nu.
inline ExactMatrix slash(const GammaRep& rep, const FourVector& k) {
  ExactMatrix out(4, 4);
  for (int mu = 0; mu < 4; ++mu) {
    ExactMatrix g = rep.gamma[static_cast<std::size_t>(mu)];
    out += g.scale(ExactScalar(Rational(eta(mu, mu) * k[static_cast<std::size_t>(mu)])));
  }
  return out;
}

/// gamma^mu k_mu - gamma^5 (ell/2) k^2 (eps5 = +1) or + i gamma^5 (ell/2) k^2 (eps5 = -1).
inline ExactMatrix dirac_matrix(const GammaRep& rep, const Rational& ell, const FourVector& k) {
  require_positive_length(ell);
  ExactMatrix m = mass_gamma(rep);
  return slash(rep, k) + m.scale(ExactScalar(Rational(ell * minkowski_square(k) / 2)));
}

inline ExactMatrix dirac_matrix(int eps5, const Rational& ell, const FourVector& k) {
  return dirac_matrix(build_majorana_rep(eps5), ell, k);
}

/// Same operator with k^0..k^3 as the symbols k0..k3 and ell symbolic.
inline PolyMatrix dirac_matrix_symbolic(int eps5) {
  const GammaRep rep = build_majorana_rep(eps5);
  PolyMatrix out(4, 4);
  ParamPoly k2;
  for (int mu = 0; mu < 4; ++mu) {
    const ParamPoly k_lower = ParamPoly(eta(mu, mu)) * sym(momentum_symbol(mu));
    PolyMatrix g = to_poly(rep.gamma[static_cast<std::size_t>(mu)]);
    out += g.scale(k_lower);
    k2 += ParamPoly(eta(mu, mu)) * sym(momentum_symbol(mu), 2);
  }
  PolyMatrix m = to_poly(mass_gamma(rep));
  return out + m.scale(ParamPoly(ExactScalar(make_rational(1, 2))) * sym(Symbol::ell) * k2);
}

/// D(k)^2 - (k^2 + eps5 (ell^2/4) (k^2)^2) I, symbolic; zero when the identity holds.
inline PolyMatrix squared_operator_residual(int eps5) {
  const PolyMatrix D = dirac_matrix_symbolic(eps5);
  ParamPoly k2;
  for (int mu = 0; mu < 4; ++mu) k2 += ParamPoly(eta(mu, mu)) * sym(momentum_symbol(mu), 2);
  const ParamPoly f = k2 + ParamPoly(ExactScalar(make_rational(eps5, 4))) * sym(Symbol::ell, 2) * k2 * k2;
  PolyMatrix rhs = PolyMatrix::identity(4);
  return D * D - rhs.scale(f);
}

inline Eigen::Matrix4cd dirac_matrix(const GammaRep& rep, double ell, const Eigen::Vector4d& k) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int mu = 0; mu < 4; ++mu) out += (eta(mu, mu) * k(mu)) * to_eigen(rep.gamma[static_cast<std::size_t>(mu)]);
  out += (0.5 * ell * minkowski_square(k)) * to_eigen(mass_gamma(rep));
  return out;
}

/// Roots of det D(k) = 0 in k^2, obtained by squaring the operator: D^2 is
/// f(k^2) I with f(s) = a s + b s^2, sampled at k = (1,0,0,0) and (2,0,0,0).
inline std::vector<Rational> dispersion_roots(const Rational& ell, int eps5) {
  require_positive_length(ell);
  const GammaRep rep = build_majorana_rep(eps5);
  auto f_at = [&](long energy) {
    const FourVector k{energy, 0, 0, 0};
    const ExactMatrix D = dirac_matrix(rep, ell, k);
    const ExactMatrix sq = D * D;
    ExactMatrix scalar = ExactMatrix::identity(4);
    const ExactScalar v = sq(0, 0);
    if (!(sq == scalar.scale(v)) || !v.is_real()) throw std::logic_error("squared Dirac operator is not scalar");
    return v.re();
  };
  const Rational f1 = f_at(1), f4 = f_at(2);
  // f(1) = a + b, f(4) = 4a + 16b
  const Rational b = (f4 - 4 * f1) / 12;
  const Rational a = f1 - b;
  std::vector<Rational> roots{0};
  if (sgn(b) != 0) roots.push_back(Rational(-a / b));
  std::sort(roots.begin(), roots.end());
  return roots;
}

enum class Branch { Massless, Heavy };

inline std::string branch_name(Branch b) { return b == Branch::Massless ? "massless" : "heavy"; }

struct SpinorSolution {
  int eps5 = -1;
  Rational ell;
  FourVector k;
  std::vector<ExactVector> basis;
  Branch branch = Branch::Heavy;
  Rational k2;
  RealityClass reality = RealityClass::Dirac;
};

struct BoostedSolution {
  int eps5 = -1;
  double ell = 1.0;
  Eigen::Vector4d k;
  std::vector<ComplexVector> basis;
  Branch branch = Branch::Heavy;
  double k2 = 0.0;
  double max_residual = 0.0;
};

/// Reference frames: rest frame k = (energy_sign 2/ell, 0, 0, 0) for eps5 = -1,
/// k = (0, 0, 0, 2/ell) for eps5 = +1, and k = (kappa, 0, 0, kappa) on the
/// massless branch.
inline FourVector reference_momentum(const Rational& ell, int eps5, Branch branch, int energy_sign = 1,
                                     const Rational& kappa = Rational(1)) {
  require_positive_length(ell);
  require_sign(energy_sign, "energy sign");
  if (branch == Branch::Massless) return {kappa, 0, 0, kappa};
  const Rational m = 2 / ell;
  if (eps5 == -1) return {energy_sign * m, 0, 0, 0};
  return {0, 0, 0, energy_sign * m};
}

inline SpinorSolution reference_solutions(const Rational& ell, int eps5, Branch branch, int energy_sign = 1,
                                          const Rational& kappa = Rational(1)) {
  const GammaRep rep = build_majorana_rep(eps5);
  SpinorSolution s;
  s.eps5 = eps5;
  s.ell = ell;
  s.branch = branch;
  s.k = reference_momentum(ell, eps5, branch, energy_sign, kappa);
  s.k2 = minkowski_square(s.k);
  s.basis = canonical_basis(nullspace(dirac_matrix(rep, ell, s.k)));
  if (s.basis.size() != 2) {
    throw std::runtime_error("nullspace dimension " + std::to_string(s.basis.size()) + " on the " +
                             branch_name(branch) + " branch, expected 2");
  }
  s.reality = reality_class(s.basis);
  return s;
}

/// ||D(k) u|| / ||u||.
inline double residual(const Eigen::Vector4d& k, const ComplexVector& u, double ell, int eps5) {
  const double n = u.norm();
  if (n == 0.0) throw std::invalid_argument("residual of the zero spinor");
  return (dirac_matrix(build_majorana_rep(eps5), ell, k) * u).norm() / n;
}

/// Exact test D(k) u = 0.
inline bool residual_is_zero(const FourVector& k, const ExactVector& u, const Rational& ell, int eps5) {
  if (std::all_of(u.begin(), u.end(), [](const ExactScalar& x) { return x.is_zero(); })) {
    throw std::invalid_argument("residual of the zero spinor");
  }
  const ExactVector r = ncdirac::apply(dirac_matrix(eps5, ell, k), u);
  return std::all_of(r.begin(), r.end(), [](const ExactScalar& x) { return x.is_zero(); });
}

inline Eigen::Vector4d to_eigen(const FourVector& k) {
  return {k[0].get_d(), k[1].get_d(), k[2].get_d(), k[3].get_d()};
}

/// k' = Lambda k, basis' = S basis. Throws if any boosted spinor misses
/// the residual tolerance at k'.
inline BoostedSolution boost_solution(const SpinorSolution& s, const BoostParameters& omega, double tol = 1e-10) {
  const GammaRep rep = build_majorana_rep(s.eps5);
  BoostedSolution out;
  out.eps5 = s.eps5;
  out.ell = s.ell.get_d();
  out.branch = s.branch;
  out.k = lorentz_matrix(omega) * to_eigen(s.k);
  out.k2 = minkowski_square(out.k);
  const ComplexMatrix S = boost_matrix(rep, omega);
  for (const auto& v : s.basis) {
    ComplexVector u = S * to_eigen(v);
    const double r = residual(out.k, u, out.ell, s.eps5);
    out.max_residual = std::max(out.max_residual, r);
    out.basis.push_back(std::move(u));
  }
  if (out.max_residual > tol) {
    throw std::runtime_error("boosted solution residual " + std::to_string(out.max_residual) + " exceeds tolerance");
  }
  return out;
}

}  // namespace ncdirac
