#pragma once

// Gamma matrices in the Majorana (imaginary) representation for C(3,2) and
// C(4,1), spinor boosts, and the Dirac/Majorana reality test.

#include "ncdirac/lie_algebra.hpp"
#include "ncdirac/matrix.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncdirac {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kFloatTolerance = 1e-12;

inline ExactMatrix pauli(int k) {
  ExactMatrix s(2, 2);
  const ExactScalar i = ExactScalar::i();
  switch (k) {
    case 1: s(0, 1) = 1; s(1, 0) = 1; break;
    case 2: s(0, 1) = -i; s(1, 0) = i; break;
    case 3: s(0, 0) = 1; s(1, 1) = -1; break;
    default: throw std::invalid_argument("pauli index must be 1, 2 or 3");
  }
  return s;
}

/// [[a, b], [c, d]] from 2x2 blocks.
inline ExactMatrix blocks(const ExactMatrix& a, const ExactMatrix& b, const ExactMatrix& c, const ExactMatrix& d) {
  ExactMatrix m(4, 4);
  m.set_block(0, 0, a);
  m.set_block(0, 2, b);
  m.set_block(2, 0, c);
  m.set_block(2, 2, d);
  return m;
}

inline ComplexMatrix to_eigen(const ExactMatrix& m) {
  ComplexMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).to_complex();
  return out;
}

inline ComplexVector to_eigen(const ExactVector& v) {
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].to_complex();
  return out;
}

/// Five-dimensional metric diag(1,-1,-1,-1,eps5).
inline int metric5(int a, int eps5) {
  if (a == 4) return eps5;
  return eta(a, a);
}

struct GammaRep {
  int eps5 = -1;
  std::array<ExactMatrix, 5> gamma;  // gamma^0..gamma^3, gamma^4
  ExactMatrix gamma5;                // i gamma^0 gamma^1 gamma^2 gamma^3
};

inline ExactMatrix product_gamma5(const std::array<ExactMatrix, 5>& g) {
  ExactMatrix p = g[0] * g[1] * g[2] * g[3];
  return p.scale(ExactScalar::i());
}

inline GammaRep build_majorana_rep(int eps5) {
  require_sign(eps5, "eps5");
  const ExactMatrix z(2, 2);
  const ExactScalar i = ExactScalar::i();
  const ExactMatrix s1 = pauli(1), s2 = pauli(2), s3 = pauli(3);
  ExactMatrix is1 = s1, is3 = s3;
  is1.scale(i);
  is3.scale(i);

  GammaRep rep;
  rep.eps5 = eps5;
  rep.gamma[0] = blocks(z, s2, s2, z);
  rep.gamma[1] = blocks(is1, z, z, is1);
  rep.gamma[2] = blocks(z, s2, -s2, z);
  rep.gamma[3] = blocks(is3, z, z, is3);
  rep.gamma5 = product_gamma5(rep.gamma);
  rep.gamma[4] = rep.gamma5;
  if (eps5 == -1) rep.gamma[4].scale(i);
  return rep;
}

struct CliffordRelation {
  int a = 0;
  int b = 0;
  bool square = false;   // (g^a)^2 - eta^{aa} I instead of the anticommutator
  ExactMatrix residual;  // {g^a, g^b} - 2 eta^{ab} I
  bool ok() const { return residual.is_zero(); }
};

struct CliffordReport {
  int eps5 = 0;
  std::vector<CliffordRelation> relations;  // 15 anticommutators (a <= b), then 5 squares
  bool gamma5_product_ok = false;           // gamma^5 = i g0 g1 g2 g3 = diag(-s2, s2)
  bool gamma4_convention_ok = false;        // gamma^4 = gamma^5 or i gamma^5
  bool imaginary_ok = false;                // g0..g3 purely imaginary
  bool ok() const {
    if (!gamma5_product_ok || !gamma4_convention_ok || !imaginary_ok) return false;
    for (const auto& r : relations)
      if (!r.ok()) return false;
    return true;
  }
};

inline bool purely_imaginary(const ExactMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_imaginary()) return false;
  return true;
}

inline CliffordReport verify_clifford(const GammaRep& rep) {
  CliffordReport out;
  out.eps5 = rep.eps5;
  const ExactMatrix id = ExactMatrix::identity(4);
  auto check = [&](int a, int b) {
    ExactMatrix expected = id;
    expected.scale(ExactScalar(a == b ? 2 * metric5(a, rep.eps5) : 0));
    out.relations.push_back({a, b, false,
                             anticommutator(rep.gamma[static_cast<std::size_t>(a)],
                                            rep.gamma[static_cast<std::size_t>(b)]) - expected});
  };
  for (int a = 0; a < 5; ++a)
    for (int b = a; b < 5; ++b) check(a, b);
  for (int a = 0; a < 5; ++a) {
    const auto& g = rep.gamma[static_cast<std::size_t>(a)];
    ExactMatrix expected = id;
    expected.scale(ExactScalar(metric5(a, rep.eps5)));
    out.relations.push_back({a, a, true, g * g - expected});
  }

  const ExactMatrix z(2, 2);
  out.gamma5_product_ok = product_gamma5(rep.gamma) == rep.gamma5 && rep.gamma5 == blocks(-pauli(2), z, z, pauli(2));
  ExactMatrix g4 = rep.gamma5;
  if (rep.eps5 == -1) g4.scale(ExactScalar::i());
  out.gamma4_convention_ok = g4 == rep.gamma[4];
  out.imaginary_ok = true;
  for (int mu = 0; mu < 4; ++mu) out.imaginary_ok = out.imaginary_ok && purely_imaginary(rep.gamma[static_cast<std::size_t>(mu)]);
  return out;
}

/// Antisymmetric lower-index parameters omega_{mu nu}.
using BoostParameters = Eigen::Matrix4d;

inline void require_antisymmetric(const BoostParameters& omega) {
  if ((omega + omega.transpose()).cwiseAbs().maxCoeff() > kFloatTolerance) {
    throw std::invalid_argument("boost parameters must be antisymmetric");
  }
}

/// omega with a single rapidity phi in the (0, axis) plane.
inline BoostParameters rapidity(int axis, double phi) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("boost axis must be 1, 2 or 3");
  BoostParameters w = BoostParameters::Zero();
  w(0, axis) = phi;
  w(axis, 0) = -phi;
  return w;
}

/// Vector representation: Lambda = exp(Omega), Omega^mu_nu = eta^{mu mu} omega_{mu nu}.
inline Eigen::Matrix4d lorentz_matrix(const BoostParameters& omega) {
  require_antisymmetric(omega);
  Eigen::Matrix4d gen;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) gen(mu, nu) = eta(mu, mu) * omega(mu, nu);
  return gen.exp();
}

/// (1/4) omega_{mu nu} gamma^mu gamma^nu, summed over all mu, nu.
inline ComplexMatrix spinor_generator(const GammaRep& rep, const BoostParameters& omega) {
  require_antisymmetric(omega);
  ComplexMatrix gen = ComplexMatrix::Zero(4, 4);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      if (omega(mu, nu) == 0.0) continue;
      gen += 0.25 * omega(mu, nu) *
             to_eigen(rep.gamma[static_cast<std::size_t>(mu)] * rep.gamma[static_cast<std::size_t>(nu)]);
    }
  return gen;
}

/// S(omega) with S^-1 gamma^mu S = Lambda^mu_nu gamma^nu.
inline ComplexMatrix boost_matrix(const GammaRep& rep, const BoostParameters& omega) {
  return spinor_generator(rep, omega).exp();
}

/// max over mu of |S^-1 gamma^mu S - Lambda^mu_nu gamma^nu|.
inline double boost_covariance_residual(const GammaRep& rep, const BoostParameters& omega) {
  const ComplexMatrix S = boost_matrix(rep, omega);
  const ComplexMatrix Sinv = S.inverse();
  const Eigen::Matrix4d L = lorentz_matrix(omega);
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    ComplexMatrix rhs = ComplexMatrix::Zero(4, 4);
    for (int nu = 0; nu < 4; ++nu) rhs += L(mu, nu) * to_eigen(rep.gamma[static_cast<std::size_t>(nu)]);
    worst = std::max(worst, (Sinv * to_eigen(rep.gamma[static_cast<std::size_t>(mu)]) * S - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

enum class RealityClass { Dirac, Majorana };

inline std::string reality_name(RealityClass c) { return c == RealityClass::Dirac ? "Dirac" : "Majorana"; }

/// Majorana iff span(basis) is closed under complex conjugation, i.e.
/// rank [B | conj B] = rank B.
inline RealityClass reality_class(const std::vector<ExactVector>& basis) {
  if (basis.empty()) throw std::invalid_argument("reality_class: empty basis");
  const ExactMatrix B = from_columns(basis);
  const std::size_t r = rank(B);
  if (r != basis.size()) throw std::invalid_argument("reality_class: basis is linearly dependent");
  std::vector<ExactVector> both = basis;
  for (const auto& v : basis) {
    ExactVector c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i].conj();
    both.push_back(c);
  }
  return rank(from_columns(both)) == r ? RealityClass::Majorana : RealityClass::Dirac;
}

/// Float version; ranks use singular values relative to the largest.
inline RealityClass reality_class(const std::vector<ComplexVector>& basis, double tol = 1e-9) {
  if (basis.empty()) throw std::invalid_argument("reality_class: empty basis");
  const auto n = basis.front().size();
  const auto k = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix B(n, k), BB(n, 2 * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    B.col(j) = basis[static_cast<std::size_t>(j)];
    BB.col(j) = basis[static_cast<std::size_t>(j)];
    BB.col(k + j) = basis[static_cast<std::size_t>(j)].conjugate();
  }
  auto numeric_rank = [tol](const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > tol * s(0)) ++r;
    return r;
  };
  if (numeric_rank(B) != k) throw std::invalid_argument("reality_class: basis is linearly dependent");
  return numeric_rank(BB) == k ? RealityClass::Majorana : RealityClass::Dirac;
}

}  // namespace ncdirac
