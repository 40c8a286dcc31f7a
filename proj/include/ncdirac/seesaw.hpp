#pragma once

// Massless spinor coupled to the heavy branch through a scalar vacuum value:
// the 8x8 coupled operator, leading-order elimination of the heavy
// component, and the exact mode spectrum in a fixed reference frame.

#include "ncdirac/clifford.hpp"
#include "ncdirac/dirac_modes.hpp"
#include "ncdirac/matrix.hpp"
#include "ncdirac/scalars.hpp"
#include "ncdirac/upoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncdirac {

struct CouplingConfig {
  int eps5 = -1;
  Rational ell{1};
  ExactScalar g{1};
  Rational vev{0};

  void validate() const {
    require_sign(eps5, "eps5");
    require_positive_length(ell);
    if (sgn(vev) < 0) throw std::invalid_argument("vev must be non-negative");
  }
  Rational heavy_scale() const { return 2 / ell; }                 // M
  Rational coupling_squared() const { return g.norm2() * vev * vev; }  // mu^2
};

/// Double-precision counterpart, for couplings that are not rational.
struct NumericCoupling {
  int eps5 = -1;
  double ell = 1.0;
  std::complex<double> g{1.0, 0.0};
  double vev = 0.0;

  static NumericCoupling from(const CouplingConfig& c) {
    return {c.eps5, c.ell.get_d(), c.g.to_complex(), c.vev.get_d()};
  }
  void validate() const {
    require_sign(eps5, "eps5");
    if (!(ell > 0.0)) throw std::invalid_argument("ell must be positive");
    if (vev < 0.0) throw std::invalid_argument("vev must be non-negative");
  }
};

/// [[gamma.k, g v I], [conj(g) v I, gamma.k + (2/ell) gamma^4]] acting on (u1, u2).
inline ExactMatrix coupled_matrix(const FourVector& k, const CouplingConfig& c) {
  c.validate();
  const GammaRep rep = build_majorana_rep(c.eps5);
  const ExactMatrix K = slash(rep, k);
  ExactMatrix heavy = rep.gamma[4];
  heavy.scale(ExactScalar(c.heavy_scale()));
  ExactMatrix up = ExactMatrix::identity(4), down = ExactMatrix::identity(4);
  up.scale(c.g * ExactScalar(c.vev));
  down.scale(c.g.conj() * ExactScalar(c.vev));
  ExactMatrix out(8, 8);
  out.set_block(0, 0, K);
  out.set_block(0, 4, up);
  out.set_block(4, 0, down);
  out.set_block(4, 4, K + heavy);
  return out;
}

inline Eigen::Matrix<std::complex<double>, 8, 8> coupled_matrix(const Eigen::Vector4d& k, const NumericCoupling& c) {
  c.validate();
  const GammaRep rep = build_majorana_rep(c.eps5);
  Eigen::Matrix4cd K = Eigen::Matrix4cd::Zero();
  for (int mu = 0; mu < 4; ++mu) K += (eta(mu, mu) * k(mu)) * to_eigen(rep.gamma[static_cast<std::size_t>(mu)]);
  Eigen::Matrix<std::complex<double>, 8, 8> out;
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  out.block<4, 4>(0, 0) = K;
  out.block<4, 4>(0, 4) = (c.g * c.vev) * id;
  out.block<4, 4>(4, 0) = (std::conj(c.g) * c.vev) * id;
  out.block<4, 4>(4, 4) = K + (2.0 / c.ell) * to_eigen(rep.gamma[4]);
  return out;
}

// ---------------------------------------------------------------------------
// Leading order

struct LeadingOrderReduction {
  int eps5 = -1;
  ExactMatrix elimination;  // u2 = elimination * u1
  ExactMatrix mass_term;    // g v * elimination

  /// Effective operator gamma.k + mass_term on u1.
  ExactMatrix at(const FourVector& k) const { return slash(build_majorana_rep(eps5), k) + mass_term; }
};

/// Drops the kinetic term of the heavy equation:
/// conj(g) v u1 + (2/ell) gamma^4 u2 = 0, so u2 = -(ell/2) conj(g) v eps5 gamma^4 u1.
inline LeadingOrderReduction leading_order_reduction(const CouplingConfig& c) {
  c.validate();
  const GammaRep rep = build_majorana_rep(c.eps5);
  LeadingOrderReduction r;
  r.eps5 = c.eps5;
  r.elimination = rep.gamma[4];
  r.elimination.scale(ExactScalar(Rational(-c.eps5 * c.ell / 2)) * c.g.conj() * ExactScalar(c.vev));
  r.mass_term = r.elimination;
  r.mass_term.scale(c.g * ExactScalar(c.vev));
  return r;
}

struct LeadingMass {
  Rational mass;  // |g|^2 v^2 ell / 2
  Rational k2;    // +mass^2 (eps5 = -1) or -mass^2 (eps5 = +1)
  RealityClass reality = RealityClass::Dirac;
};

inline LeadingMass light_mass_leading(const CouplingConfig& c) {
  c.validate();
  LeadingMass out;
  out.mass = c.coupling_squared() * c.ell / 2;
  out.k2 = -c.eps5 * out.mass * out.mass;
  out.reality = c.eps5 == -1 ? RealityClass::Dirac : RealityClass::Majorana;
  return out;
}

/// Symbolic check in g, gbar, v, ell. All residual matrices vanish when the
/// elimination solves the heavy equation and reproduces the stated operators.
struct EffectiveEquationCheck {
  int eps5 = -1;
  PolyMatrix heavy_residual;        // ell * (gbar v I + (2/ell) gamma^4 Z)
  PolyMatrix elimination_residual;  // Z - stated elimination
  PolyMatrix operator_residual;     // g v Z - stated mass term
  bool instance_ok = false;         // leading_order_reduction(c) equals the symbolic result at c
  bool ok() const {
    return heavy_residual.is_zero() && elimination_residual.is_zero() && operator_residual.is_zero() && instance_ok;
  }
};

inline EffectiveEquationCheck verify_effective_equation(const CouplingConfig& c) {
  c.validate();
  const GammaRep rep = build_majorana_rep(c.eps5);
  const ParamPoly half_ell = ParamPoly(ExactScalar(make_rational(1, 2))) * sym(Symbol::ell);
  const ParamPoly gbar_v = sym(Symbol::gbar) * sym(Symbol::v);
  const ParamPoly g_v = sym(Symbol::g) * sym(Symbol::v);
  const PolyMatrix g4 = to_poly(rep.gamma[4]);
  const PolyMatrix g5 = to_poly(rep.gamma5);
  const ExactScalar i = ExactScalar::i();

  PolyMatrix Z = g4;
  Z.scale(ParamPoly(-c.eps5) * half_ell * gbar_v);

  EffectiveEquationCheck out;
  out.eps5 = c.eps5;
  PolyMatrix lhs = PolyMatrix::identity(4);
  lhs.scale(sym(Symbol::ell) * gbar_v);
  PolyMatrix twice = g4 * Z;
  twice.scale(ParamPoly(2));
  out.heavy_residual = lhs + twice;

  // eps5 = -1: u2 = i (ell/2) gbar v gamma^5 u1, mass term +i |g|^2 v^2 (ell/2) gamma^5.
  // eps5 = +1: u2 = -(ell/2) gbar v gamma^5 u1, mass term -|g|^2 v^2 (ell/2) gamma^5.
  const ParamPoly phase = c.eps5 == -1 ? ParamPoly(i) : ParamPoly(-1);
  PolyMatrix stated_z = g5;
  stated_z.scale(phase * half_ell * gbar_v);
  PolyMatrix stated_mass = g5;
  stated_mass.scale(phase * half_ell * g_v * gbar_v);
  out.elimination_residual = Z - stated_z;
  PolyMatrix gz = Z;
  gz.scale(g_v);
  out.operator_residual = gz - stated_mass;

  const Bindings at{{Symbol::g, ParamPoly(c.g)},
                    {Symbol::gbar, ParamPoly(c.g.conj())},
                    {Symbol::v, ParamPoly(ExactScalar(c.vev))},
                    {Symbol::ell, ParamPoly(ExactScalar(c.ell))}};
  auto instantiate = [&](const PolyMatrix& m) {
    return m.map([&](const ParamPoly& p) {
      const ParamPoly v = substitute(p, at);
      if (!v.is_constant()) throw std::logic_error("substitution left free symbols");
      return v.constant_term();
    });
  };
  const LeadingOrderReduction r = leading_order_reduction(c);
  out.instance_ok = instantiate(Z) == r.elimination && instantiate(gz) == r.mass_term;
  return out;
}

// ---------------------------------------------------------------------------
// Exact mode spectrum

/// Reference-frame momentum as a function of one parameter t:
/// k = (t, 0, 0, 0) for eps5 = -1, k = (0, 0, 0, t) for eps5 = +1.
inline FourVector frame_momentum(int eps5, const Rational& t) {
  require_sign(eps5, "eps5");
  if (eps5 == -1) return {t, 0, 0, 0};
  return {0, 0, 0, t};
}

inline Eigen::Vector4d frame_momentum(int eps5, double t) {
  if (eps5 == -1) return {t, 0, 0, 0};
  return {0, 0, 0, t};
}

/// k^2 in the reference frame: t^2 or -t^2.
inline int frame_k2_sign(int eps5) { return eps5 == -1 ? 1 : -1; }

struct ModeBranch {
  RealRoot t;                        // non-negative frame parameter
  double k2 = 0.0;
  std::optional<Rational> k2_exact;  // set when the root is rational
  std::size_t nullity = 0;
  std::vector<ComplexVector> basis;  // 8-component nullspace vectors (u1, u2)
  bool exact_basis = false;
  RealityClass reality = RealityClass::Dirac;  // light: u1 sector, heavy: u2 sector
};

struct ModeSpectrum {
  CouplingConfig config;
  UPoly determinant;           // det coupled_matrix as a polynomial in t
  UPoly square_free_part;
  std::vector<RealRoot> roots;  // real roots in t, ascending
  bool symmetric = false;       // determinant even in t
  ModeBranch light;
  ModeBranch heavy;
  LeadingMass leading;
  double deviation = 0.0;       // | |t_light| - leading mass | / leading mass
  bool exact = false;           // light and heavy roots both rational
};

inline ExactVector project(const ExactVector& v, std::size_t offset) {
  return ExactVector(v.begin() + static_cast<std::ptrdiff_t>(offset), v.begin() + static_cast<std::ptrdiff_t>(offset + 4));
}

/// Nullspace from singular values below rel_tol * largest.
inline std::vector<ComplexVector> numeric_nullspace(const ComplexMatrix& m, double rel_tol = 1e-9) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  std::vector<ComplexVector> out;
  const double cut = rel_tol * std::max(s(0), 1.0);
  for (Eigen::Index j = 0; j < s.size(); ++j)
    if (s(j) <= cut) out.push_back(svd.matrixV().col(j));
  return out;
}

namespace detail {

inline std::vector<ComplexVector> sector(const std::vector<ComplexVector>& basis, Eigen::Index offset) {
  std::vector<ComplexVector> out;
  for (const auto& v : basis) out.push_back(v.segment(offset, 4));
  return out;
}

inline ModeBranch resolve_branch(const CouplingConfig& c, const RealRoot& t, Eigen::Index sector_offset) {
  ModeBranch b;
  b.t = t;
  const int sign = frame_k2_sign(c.eps5);
  if (t.exact) {
    b.k2_exact = Rational(sign * t.lo * t.lo);
    b.k2 = b.k2_exact->get_d();
    const auto null = nullspace(coupled_matrix(frame_momentum(c.eps5, t.lo), c));
    b.exact_basis = true;
    std::vector<ExactVector> part;
    for (const auto& v : null) {
      b.basis.push_back(to_eigen(v));
      part.push_back(project(v, static_cast<std::size_t>(sector_offset)));
    }
    b.nullity = null.size();
    if (!part.empty()) b.reality = reality_class(canonical_basis(part));
    return b;
  }
  const double tv = t.value();
  b.k2 = sign * tv * tv;
  const ComplexMatrix m = coupled_matrix(frame_momentum(c.eps5, tv), NumericCoupling::from(c));
  b.basis = numeric_nullspace(m);
  b.nullity = b.basis.size();
  if (b.basis.empty()) {
    throw std::runtime_error("no numeric null vector at bracketed root [" + t.lo.get_str() + ", " + t.hi.get_str() + "]");
  }
  b.reality = reality_class(sector(b.basis, sector_offset));
  return b;
}

inline Rational abs_k2(const RealRoot& t) {
  const Rational mid = t.exact ? t.lo : (t.lo + t.hi) / 2;
  return mid * mid;
}

}  // namespace detail

/// det coupled_matrix(k(t)) interpolated exactly at t = 0..8 (degree <= 8).
inline UPoly frame_determinant(const CouplingConfig& c) {
  c.validate();
  std::vector<Rational> xs, ys;
  for (long t = 0; t <= 8; ++t) {
    const ExactScalar d = determinant(coupled_matrix(frame_momentum(c.eps5, Rational(t)), c));
    if (!d.is_real()) throw std::logic_error("coupled determinant is not real");
    xs.emplace_back(t);
    ys.push_back(d.re());
  }
  return interpolate(xs, ys);
}

inline ModeSpectrum exact_mode_spectrum(const CouplingConfig& c) {
  c.validate();
  ModeSpectrum s;
  s.config = c;
  s.leading = light_mass_leading(c);
  s.determinant = frame_determinant(c);
  s.symmetric = true;
  for (std::size_t i = 1; i < s.determinant.coeffs().size(); i += 2)
    s.symmetric = s.symmetric && s.determinant.coeffs()[i] == 0;
  s.square_free_part = square_free(s.determinant);
  s.roots = isolate_real_roots(s.square_free_part);

  std::vector<RealRoot> nonneg;
  for (const auto& r : s.roots)
    if (sgn(r.lo) >= 0) nonneg.push_back(r);  // brackets never straddle a nonzero root's sign
  if (nonneg.empty()) throw std::runtime_error("no non-negative real root in the reference frame");

  const bool decoupled = c.coupling_squared() == 0;
  const RealRoot* light = nullptr;
  for (const auto& r : nonneg) {
    const bool zero = r.exact && sgn(r.lo) == 0;
    if (zero && !decoupled) continue;
    if (!light || detail::abs_k2(r) < detail::abs_k2(*light)) light = &r;
  }
  const Rational target = 4 / (c.ell * c.ell);
  const RealRoot* heavy = &nonneg.front();
  for (const auto& r : nonneg)
    if (abs(detail::abs_k2(r) - target) < abs(detail::abs_k2(*heavy) - target)) heavy = &r;
  if (!light) throw std::runtime_error("no light root found");

  s.light = detail::resolve_branch(c, *light, 0);
  s.heavy = detail::resolve_branch(c, *heavy, 4);
  s.exact = light->exact && heavy->exact;

  const Rational t_light = light->exact ? light->lo : (light->lo + light->hi) / 2;
  if (sgn(s.leading.mass) == 0) {
    s.deviation = Rational(abs(t_light)).get_d();
  } else {
    s.deviation = Rational(abs(abs(t_light) - s.leading.mass) / s.leading.mass).get_d();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Numeric oracle

/// Real roots t of det(A0 + t A1) = 0 as eigenvalues of -A1^{-1} A0, each
/// listed once. Independent of the interpolation and Sturm path.
inline std::vector<double> numeric_frame_roots(const NumericCoupling& c, double imag_tol = 1e-7) {
  c.validate();
  const auto A0 = coupled_matrix(frame_momentum(c.eps5, 0.0), c);
  const Eigen::Matrix<std::complex<double>, 8, 8> A1 = coupled_matrix(frame_momentum(c.eps5, 1.0), c) - A0;
  const Eigen::Matrix<std::complex<double>, 8, 8> pencil = -A1.inverse() * A0;
  Eigen::ComplexEigenSolver<Eigen::Matrix<std::complex<double>, 8, 8>> es(pencil);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
  const double scale = std::max(1.0, pencil.cwiseAbs().maxCoeff());
  std::vector<double> real;
  for (Eigen::Index i = 0; i < 8; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) <= imag_tol * scale) real.push_back(z.real());
  }
  std::sort(real.begin(), real.end());
  std::vector<double> out;
  for (double x : real)
    if (out.empty() || std::abs(x - out.back()) > 1e-6 * std::max(1.0, std::abs(x))) out.push_back(x);
  return out;
}

struct NumericSpectrum {
  std::vector<double> roots;
  double light_k2 = 0.0;
  double heavy_k2 = 0.0;
  double light_mass = 0.0;
};

inline NumericSpectrum numeric_mode_spectrum(const NumericCoupling& c) {
  NumericSpectrum s;
  s.roots = numeric_frame_roots(c);
  const int sign = frame_k2_sign(c.eps5);
  const double target = 4.0 / (c.ell * c.ell);
  const bool decoupled = std::norm(c.g) * c.vev * c.vev == 0.0;
  double light = -1.0, heavy = -1.0;
  for (double t : s.roots) {
    const double a = t * t;
    if (!decoupled && a == 0.0) continue;
    if (light < 0.0 || a < light) light = a;
    if (heavy < 0.0 || std::abs(a - target) < std::abs(heavy - target)) heavy = a;
  }
  if (light < 0.0) throw std::runtime_error("numeric spectrum has no real roots");
  s.light_k2 = sign * light;
  s.heavy_k2 = sign * heavy;
  s.light_mass = std::sqrt(light);
  return s;
}

}  // namespace ncdirac
