#pragma once

// Lie algebras given by structure constants: the deformed
// Heisenberg-Poincare algebra, the six-dimensional pseudo-orthogonal
// algebra, Jacobi checks, linear isomorphisms and contractions.

#include "ncdirac/matrix.hpp"
#include "ncdirac/scalars.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncdirac {

inline void require_sign(int eps, const char* name) {
  if (eps != 1 && eps != -1) throw std::invalid_argument(std::string(name) + " must be +1 or -1");
}

/// Minkowski metric diag(1,-1,-1,-1).
inline int eta(int mu, int nu) {
  if (mu != nu) return 0;
  return mu == 0 ? 1 : -1;
}

/// Sparse element of a Lie algebra: basis index -> coefficient.
class LieVector {
 public:
  using Terms = std::map<std::size_t, ParamPoly>;

  LieVector() = default;
  static LieVector basis(std::size_t i, const ParamPoly& c = ParamPoly(1)) {
    LieVector v;
    v.add(i, c);
    return v;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ParamPoly coefficient(std::size_t i) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? ParamPoly() : it->second;
  }

  void add(std::size_t i, const ParamPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LieVector& operator+=(const LieVector& o) {
    for (const auto& [i, c] : o.terms_) add(i, c);
    return *this;
  }
  LieVector& operator-=(const LieVector& o) {
    for (const auto& [i, c] : o.terms_) add(i, -c);
    return *this;
  }
  friend LieVector operator+(LieVector a, const LieVector& b) { return a += b; }
  friend LieVector operator-(LieVector a, const LieVector& b) { return a -= b; }
  friend LieVector operator*(const ParamPoly& s, const LieVector& v) {
    LieVector out;
    for (const auto& [i, c] : v.terms_) out.add(i, s * c);
    return out;
  }
  LieVector operator-() const { return ParamPoly(-1) * *this; }
  friend bool operator==(const LieVector& a, const LieVector& b) { return a.terms_ == b.terms_; }

  template <typename F>
  LieVector map_coefficients(F&& f) const {
    LieVector out;
    for (const auto& [i, c] : terms_) out.add(i, f(c));
    return out;
  }

 private:
  Terms terms_;
};

/// A Lie algebra as an ordered basis plus an antisymmetric bracket table.
/// Only pairs i < j are stored; [e_j, e_i] is read back as -[e_i, e_j].
class StructureConstants {
 public:
  StructureConstants() = default;
  StructureConstants(std::vector<std::string> basis, int eps4, int eps5)
      : basis_(std::move(basis)), eps4_(eps4), eps5_(eps5) {}

  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::string>& basis() const { return basis_; }
  int eps4() const { return eps4_; }
  int eps5() const { return eps5_; }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] == label) return i;
    }
    throw std::out_of_range("unknown generator " + label);
  }

  /// Sets [e_i, e_j]; i == j is rejected since the diagonal is zero by
  /// antisymmetry.
  void set(std::size_t i, std::size_t j, LieVector value) {
    check_index(i);
    check_index(j);
    if (i == j) throw std::invalid_argument("bracket of a generator with itself is fixed to zero");
    if (i > j) {
      std::swap(i, j);
      value = -value;
    }
    if (value.is_zero()) {
      table_.erase({i, j});
    } else {
      table_[{i, j}] = std::move(value);
    }
  }

  LieVector bracket(std::size_t i, std::size_t j) const {
    if (i == j) return {};
    bool flip = i > j;
    auto it = table_.find(flip ? std::pair{j, i} : std::pair{i, j});
    if (it == table_.end()) return {};
    return flip ? -it->second : it->second;
  }

  LieVector bracket(const LieVector& a, const LieVector& b) const {
    LieVector out;
    for (const auto& [i, ci] : a.terms()) {
      for (const auto& [j, cj] : b.terms()) {
        if (i == j) continue;
        out += (ci * cj) * bracket(i, j);
      }
    }
    return out;
  }

  const std::map<std::pair<std::size_t, std::size_t>, LieVector>& table() const { return table_; }

  template <typename F>
  StructureConstants map_coefficients(F&& f) const {
    StructureConstants out(basis_, eps4_, eps5_);
    for (const auto& [key, value] : table_) out.set(key.first, key.second, value.map_coefficients(f));
    return out;
  }

  friend bool operator==(const StructureConstants& a, const StructureConstants& b) {
    return a.basis_ == b.basis_ && a.table_ == b.table_;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= basis_.size()) throw std::out_of_range("generator index out of range");
  }

  std::vector<std::string> basis_;
  int eps4_ = 1;
  int eps5_ = 1;
  std::map<std::pair<std::size_t, std::size_t>, LieVector> table_;
};

// ---------------------------------------------------------------------------
// Generator layout of the deformed algebra: M01 M02 M03 M12 M13 M23, P0..P3,
// x0..x3, I.

namespace gen {
inline constexpr std::size_t kCount = 15;
inline constexpr std::size_t kLorentzCount = 6;

/// Index of M_{mu nu} for mu < nu.
inline std::size_t M(int mu, int nu) {
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
  if (mu >= nu) throw std::invalid_argument("M index requires mu < nu");
  return static_cast<std::size_t>(table[mu][nu]);
}
inline constexpr std::size_t P(int mu) { return 6 + static_cast<std::size_t>(mu); }
inline constexpr std::size_t X(int mu) { return 10 + static_cast<std::size_t>(mu); }
inline constexpr std::size_t I = 14;

inline constexpr std::array<std::pair<int, int>, 6> kLorentzPairs = {
    std::pair{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

inline std::vector<std::string> labels() {
  std::vector<std::string> out;
  for (auto [a, b] : kLorentzPairs) out.push_back("M" + std::to_string(a) + std::to_string(b));
  for (int mu = 0; mu < 4; ++mu) out.push_back("P" + std::to_string(mu));
  for (int mu = 0; mu < 4; ++mu) out.push_back("x" + std::to_string(mu));
  out.push_back("I");
  return out;
}
}  // namespace gen

/// Signed reference to an antisymmetric generator M_{ab}: M_{ba} = -M_{ab},
/// M_{aa} = 0.
struct SignedIndex {
  int sign = 0;
  std::size_t index = 0;
};

namespace detail {

inline void add_signed(LieVector& v, SignedIndex s, const ParamPoly& c) {
  if (s.sign != 0) v.add(s.index, ParamPoly(s.sign) * c);
}

/// i (M_{ad} eta_{bc} + M_{bc} eta_{ad} - M_{bd} eta_{ac} - M_{ac} eta_{bd})
template <typename Lookup, typename Metric>
LieVector rotation_bracket(int a, int b, int c, int d, Lookup&& m, Metric&& metric) {
  LieVector out;
  const ExactScalar i = ExactScalar::i();
  add_signed(out, m(a, d), ParamPoly(i * ExactScalar(metric(b, c))));
  add_signed(out, m(b, c), ParamPoly(i * ExactScalar(metric(a, d))));
  add_signed(out, m(b, d), ParamPoly(-i * ExactScalar(metric(a, c))));
  add_signed(out, m(a, c), ParamPoly(-i * ExactScalar(metric(b, d))));
  return out;
}

inline SignedIndex lorentz_index(int a, int b) {
  if (a == b) return {0, 0};
  if (a < b) return {1, gen::M(a, b)};
  return {-1, gen::M(b, a)};
}

}  // namespace detail

/// The fifteen-generator deformed algebra with symbolic ell and rho = 1/R^2.
inline StructureConstants build_deformed_algebra(int eps4, int eps5) {
  require_sign(eps4, "eps4");
  require_sign(eps5, "eps5");
  StructureConstants alg(gen::labels(), eps4, eps5);
  const ExactScalar i = ExactScalar::i();
  const ParamPoly ell2 = sym(Symbol::ell, 2);
  const ParamPoly rho = sym(Symbol::rho);
  auto metric = [](int a, int b) { return eta(a, b); };

  // [M, M]
  for (std::size_t s = 0; s < gen::kLorentzPairs.size(); ++s) {
    for (std::size_t t = s + 1; t < gen::kLorentzPairs.size(); ++t) {
      auto [a, b] = gen::kLorentzPairs[s];
      auto [c, d] = gen::kLorentzPairs[t];
      alg.set(gen::M(a, b), gen::M(c, d), detail::rotation_bracket(a, b, c, d, detail::lorentz_index, metric));
    }
  }
  // [M_{mu nu}, P_l] and [M_{mu nu}, x_l]: i (V_mu eta_{nu l} - V_nu eta_{mu l})
  for (auto [mu, nu] : gen::kLorentzPairs) {
    for (int l = 0; l < 4; ++l) {
      for (auto family : {gen::P(0), gen::X(0)}) {
        LieVector v;
        v.add(family + static_cast<std::size_t>(mu), ParamPoly(i * ExactScalar(eta(nu, l))));
        v.add(family + static_cast<std::size_t>(nu), ParamPoly(-i * ExactScalar(eta(mu, l))));
        alg.set(gen::M(mu, nu), family + static_cast<std::size_t>(l), v);
      }
    }
  }
  for (auto [mu, nu] : gen::kLorentzPairs) {
    // [P_mu, P_nu] = -i eps4 rho M_{mu nu};  [x_mu, x_nu] = -i eps5 ell^2 M_{mu nu}
    alg.set(gen::P(mu), gen::P(nu), LieVector::basis(gen::M(mu, nu), ParamPoly(-i * ExactScalar(eps4)) * rho));
    alg.set(gen::X(mu), gen::X(nu), LieVector::basis(gen::M(mu, nu), ParamPoly(-i * ExactScalar(eps5)) * ell2));
  }
  for (int mu = 0; mu < 4; ++mu) {
    // [P_mu, x_nu] = i eta_{mu nu} I
    for (int nu = 0; nu < 4; ++nu) {
      if (eta(mu, nu) != 0) {
        alg.set(gen::P(mu), gen::X(nu), LieVector::basis(gen::I, ParamPoly(i * ExactScalar(eta(mu, nu)))));
      }
    }
    // [P_mu, I] = -i eps4 rho x_mu;  [x_mu, I] = i eps5 ell^2 P_mu
    alg.set(gen::P(mu), gen::I, LieVector::basis(gen::X(mu), ParamPoly(-i * ExactScalar(eps4)) * rho));
    alg.set(gen::X(mu), gen::I, LieVector::basis(gen::P(mu), ParamPoly(i * ExactScalar(eps5)) * ell2));
  }
  return alg;
}

// ---------------------------------------------------------------------------

/// Diagonal metric (1,-1,-1,-1,eps4,eps5) on six indices.
struct Metric6 {
  int eps4 = 1;
  int eps5 = 1;

  Metric6(int e4, int e5) : eps4(e4), eps5(e5) {
    require_sign(e4, "eps4");
    require_sign(e5, "eps5");
  }

  std::array<int, 6> diagonal() const { return {1, -1, -1, -1, eps4, eps5}; }
  int operator()(int a, int b) const { return a == b ? diagonal()[static_cast<std::size_t>(a)] : 0; }
};

/// Basis order of o(eta): M01 M02 M03 M12 M13 M23, M04..M34, M05..M35, M45.
/// Chosen so that the momentum/coordinate ansatz is diagonal.
inline std::vector<std::pair<int, int>> orthogonal_pairs() {
  std::vector<std::pair<int, int>> out(gen::kLorentzPairs.begin(), gen::kLorentzPairs.end());
  for (int mu = 0; mu < 4; ++mu) out.emplace_back(mu, 4);
  for (int mu = 0; mu < 4; ++mu) out.emplace_back(mu, 5);
  out.emplace_back(4, 5);
  return out;
}

inline StructureConstants build_orthogonal_algebra(const Metric6& metric) {
  const auto pairs = orthogonal_pairs();
  std::vector<std::string> labels;
  std::map<std::pair<int, int>, std::size_t> lookup;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    labels.push_back("M" + std::to_string(pairs[k].first) + std::to_string(pairs[k].second));
    lookup[pairs[k]] = k;
  }
  auto index = [&](int a, int b) -> SignedIndex {
    if (a == b) return {0, 0};
    if (a < b) return {1, lookup.at({a, b})};
    return {-1, lookup.at({b, a})};
  };
  StructureConstants alg(labels, metric.eps4, metric.eps5);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    for (std::size_t t = s + 1; t < pairs.size(); ++t) {
      auto [a, b] = pairs[s];
      auto [c, d] = pairs[t];
      alg.set(s, t, detail::rotation_bracket(a, b, c, d, index, metric));
    }
  }
  return alg;
}

// ---------------------------------------------------------------------------

struct JacobiFailure {
  std::array<std::size_t, 3> triple{};
  LieVector residual;
};

struct JacobiReport {
  std::size_t triples_checked = 0;
  std::vector<JacobiFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Cyclic sum [a,[b,c]] + [b,[c,a]] + [c,[a,b]] for every triple a<b<c;
/// only nonzero residuals are listed.
inline JacobiReport jacobi_residual(const StructureConstants& alg) {
  JacobiReport report;
  const std::size_t n = alg.dim();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        ++report.triples_checked;
        LieVector ea = LieVector::basis(a), eb = LieVector::basis(b), ec = LieVector::basis(c);
        LieVector sum = alg.bracket(ea, alg.bracket(b, c));
        sum += alg.bracket(eb, alg.bracket(c, a));
        sum += alg.bracket(ec, alg.bracket(a, b));
        if (!sum.is_zero()) report.failures.push_back({{a, b, c}, std::move(sum)});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

/// Column j holds the image of source generator j in the target basis.
using LinearMap = PolyMatrix;

struct BracketMismatch {
  std::size_t left = 0;
  std::size_t right = 0;
  LieVector residual;
};

struct IsomorphismReport {
  bool invertible = false;
  std::vector<BracketMismatch> mismatches;
  std::size_t pairs_checked = 0;
  bool ok() const { return invertible && mismatches.empty(); }
};

inline LieVector apply_map(const LinearMap& map, const LieVector& v) {
  LieVector out;
  for (const auto& [j, c] : v.terms()) {
    for (std::size_t i = 0; i < map.rows(); ++i) {
      if (!map(i, j).is_zero()) out.add(i, reduce_radius(c * map(i, j)));
    }
  }
  return out;
}

namespace detail {

/// Fixed sample points for generic-rank tests; rho is tied to r^2 so the
/// side relation of the radius symbol holds.
inline std::vector<std::array<Rational, kSymbolCount>> sample_points() {
  std::vector<std::array<Rational, kSymbolCount>> pts;
  const long seeds[3][kSymbolCount] = {{3, 0, 5, 7, 11, 13, 17, 19, 23, 29, 31, 2},
                                       {5, 0, 2, 3, 5, 7, 11, 13, 17, 19, 23, 7},
                                       {7, 0, 13, 11, 7, 5, 3, 2, 29, 23, 19, 3}};
  for (const auto& row : seeds) {
    std::array<Rational, kSymbolCount> p;
    for (std::size_t s = 0; s < kSymbolCount; ++s) p[s] = make_rational(row[s], 37);
    const auto r = static_cast<std::size_t>(Symbol::r);
    p[static_cast<std::size_t>(Symbol::rho)] = p[r] * p[r];
    pts.push_back(p);
  }
  return pts;
}

inline ExactScalar evaluate_exact(const ParamPoly& p, const std::array<Rational, kSymbolCount>& point) {
  ExactScalar sum;
  for (const auto& [m, c] : p.terms()) {
    ExactScalar t = c;
    for (std::size_t s = 0; s < kSymbolCount; ++s) {
      for (unsigned e = 0; e < m[s]; ++e) t *= ExactScalar(point[s]);
    }
    sum += t;
  }
  return sum;
}

}  // namespace detail

/// Checks phi([X,Y]) = [phi X, phi Y] on every basis pair. Invertibility is
/// certified by a nonzero determinant at one of a few rational sample points,
/// which proves the determinant polynomial is not identically zero.
inline IsomorphismReport verify_linear_isomorphism(const StructureConstants& src, const StructureConstants& dst,
                                                   const LinearMap& map) {
  if (map.rows() != map.cols() || map.rows() != src.dim() || dst.dim() != src.dim()) {
    throw std::invalid_argument("isomorphism check needs a square map between algebras of equal dimension");
  }
  IsomorphismReport report;
  for (const auto& point : detail::sample_points()) {
    ExactMatrix numeric = map.map([&](const ParamPoly& p) { return detail::evaluate_exact(p, point); });
    if (!determinant(numeric).is_zero()) {
      report.invertible = true;
      break;
    }
  }
  const std::size_t n = src.dim();
  std::vector<LieVector> images(n);
  for (std::size_t j = 0; j < n; ++j) images[j] = apply_map(map, LieVector::basis(j));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      ++report.pairs_checked;
      LieVector lhs = apply_map(map, src.bracket(a, b));
      LieVector rhs = dst.bracket(images[a], images[b]).map_coefficients(reduce_radius);
      LieVector diff = lhs - rhs;
      if (!diff.is_zero()) report.mismatches.push_back({a, b, std::move(diff)});
    }
  }
  return report;
}

struct IsomorphismScalings {
  ParamPoly alpha;
  ParamPoly beta;
  ParamPoly gamma;
  std::size_t candidates_tried = 0;
  std::size_t candidates_passing = 0;
  std::string family;
};

class NoSolutionInAnsatz : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ansatz P_mu -> alpha M_{mu4}, x_mu -> beta M_{mu5}, I -> gamma M_{45},
/// Lorentz generators fixed.
inline LinearMap ansatz_map(const ParamPoly& alpha, const ParamPoly& beta, const ParamPoly& gamma) {
  LinearMap map(gen::kCount, gen::kCount);
  for (std::size_t k = 0; k < gen::kLorentzCount; ++k) map(k, k) = ParamPoly(1);
  for (int mu = 0; mu < 4; ++mu) {
    map(gen::P(mu), gen::P(mu)) = alpha;
    map(gen::X(mu), gen::X(mu)) = beta;
  }
  map(gen::I, gen::I) = gamma;
  return map;
}

namespace detail {

/// Square root of c * monomial when it exists with an r for odd powers of
/// rho; nullopt otherwise.
inline std::optional<ParamPoly> monomial_sqrt(const ParamPoly& p) {
  if (p.size() != 1) return std::nullopt;
  const auto& [m, c] = *p.terms().begin();
  if (!c.is_real() || sgn(c.re()) <= 0) return std::nullopt;
  mpz_class num = c.re().get_num(), den = c.re().get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Monomial root{};
  for (std::size_t s = 0; s < kSymbolCount; ++s) {
    if (s == static_cast<std::size_t>(Symbol::rho)) continue;
    if (m[s] % 2 != 0) return std::nullopt;
    root[s] = static_cast<std::uint16_t>(m[s] / 2);
  }
  const auto rho = static_cast<std::size_t>(Symbol::rho);
  const auto r = static_cast<std::size_t>(Symbol::r);
  root[rho] = static_cast<std::uint16_t>(m[rho] / 2);
  root[r] = static_cast<std::uint16_t>(root[r] + m[rho] % 2);
  return ParamPoly::term(root, ExactScalar(Rational(sn, sd)));
}

/// Solves c_target = factor * c_source for factor when c_source is a nonzero
/// constant.
inline std::optional<ParamPoly> ratio(const ParamPoly& target, const ParamPoly& source) {
  if (!source.is_constant() || source.is_zero()) return std::nullopt;
  return target * source.constant_term().inverse();
}

}  // namespace detail

/// Finds (alpha, beta, gamma) for the ansatz by matching [P,P], [x,x] and
/// [P,x], then searching the sign choices and verifying each candidate.
inline IsomorphismScalings solve_isomorphism_scalings(int eps4, int eps5) {
  StructureConstants src = build_deformed_algebra(eps4, eps5);
  StructureConstants dst = build_orthogonal_algebra(Metric6(eps4, eps5));
  // Target-side generators share indices with the source layout.
  const std::size_t M01 = gen::M(0, 1);
  auto pp_src = src.bracket(gen::P(0), gen::P(1)).coefficient(M01);
  auto pp_dst = dst.bracket(gen::P(0), gen::P(1)).coefficient(M01);
  auto xx_src = src.bracket(gen::X(0), gen::X(1)).coefficient(M01);
  auto xx_dst = dst.bracket(gen::X(0), gen::X(1)).coefficient(M01);
  auto alpha2 = detail::ratio(pp_src, pp_dst);
  auto beta2 = detail::ratio(xx_src, xx_dst);
  if (!alpha2 || !beta2) throw NoSolutionInAnsatz("momentum or coordinate bracket cannot be matched by a scaling");
  auto alpha = detail::monomial_sqrt(*alpha2);
  auto beta = detail::monomial_sqrt(*beta2);
  if (!alpha || !beta) {
    throw NoSolutionInAnsatz("required squared scalings " + alpha2->str() + ", " + beta2->str() +
                             " have no root in the coefficient ring");
  }
  auto px_src = src.bracket(gen::P(0), gen::X(0)).coefficient(gen::I);
  auto px_dst = dst.bracket(gen::P(0), gen::X(0)).coefficient(gen::I);

  IsomorphismScalings out;
  out.family = "P_mu -> alpha M_mu4, x_mu -> beta M_mu5, I -> gamma M_45, M_mu_nu fixed";
  std::optional<IsomorphismScalings> first;
  for (int sa : {1, -1}) {
    for (int sb : {1, -1}) {
      ParamPoly a = ParamPoly(sa) * *alpha;
      ParamPoly b = ParamPoly(sb) * *beta;
      // gamma * px_src = a * b * px_dst
      auto g = detail::ratio(reduce_radius(a * b * px_dst), px_src);
      if (!g) continue;
      for (int sg : {1, -1}) {
        ParamPoly gamma = ParamPoly(sg) * *g;
        ++out.candidates_tried;
        if (verify_linear_isomorphism(src, dst, ansatz_map(a, b, gamma)).ok()) {
          ++out.candidates_passing;
          if (!first) first = IsomorphismScalings{a, b, gamma, 0, 0, {}};
        }
      }
    }
  }
  if (!first) throw NoSolutionInAnsatz("no sign choice in the scaling ansatz satisfies all brackets");
  out.alpha = first->alpha;
  out.beta = first->beta;
  out.gamma = first->gamma;
  return out;
}

/// Substitutes parameters in every structure constant.
inline StructureConstants substitute(const StructureConstants& alg, const Bindings& bindings) {
  return alg.map_coefficients([&](const ParamPoly& p) { return substitute(p, bindings); });
}

/// Contraction limits: only ell -> 0 and/or rho -> 0 are accepted.
inline StructureConstants contract(const StructureConstants& alg, const Bindings& bindings) {
  for (const auto& [s, value] : bindings) {
    if ((s != Symbol::ell && s != Symbol::rho) || !value.is_zero()) {
      throw std::invalid_argument("contraction binds ell and/or rho to zero only");
    }
  }
  return substitute(alg, bindings);
}

}  // namespace ncdirac
