#pragma once

// Five-variable Weyl algebra (polynomial-coefficient differential operators
// in xi^0..xi^4) and the scalar representation of the flat deformed algebra.

#include "ncdirac/lie_algebra.hpp"
#include "ncdirac/scalars.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ncdirac {

inline constexpr int kWeylVars = 5;

using MultiIndex = std::array<std::uint16_t, kWeylVars>;

/// Sum of coefficient * xi^alpha d^beta with every derivative to the right.
class WeylOperator {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using Terms = std::map<Key, ParamPoly>;

  WeylOperator() = default;
  WeylOperator(const ParamPoly& c) { add({}, {}, c); }  // NOLINT(google-explicit-constructor)

  static WeylOperator xi(int var) {
    MultiIndex a{};
    a[static_cast<std::size_t>(var)] = 1;
    WeylOperator w;
    w.add(a, {}, ParamPoly(1));
    return w;
  }
  static WeylOperator d(int var) {
    MultiIndex b{};
    b[static_cast<std::size_t>(var)] = 1;
    WeylOperator w;
    w.add({}, b, ParamPoly(1));
    return w;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const MultiIndex& alpha, const MultiIndex& beta, const ParamPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Key{alpha, beta}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  WeylOperator& operator+=(const WeylOperator& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  WeylOperator& operator-=(const WeylOperator& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
  }
  friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
  friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
  friend WeylOperator operator*(const ParamPoly& s, const WeylOperator& w) {
    WeylOperator out;
    for (const auto& [k, c] : w.terms_) out.add(k.first, k.second, s * c);
    return out;
  }
  WeylOperator operator-() const { return ParamPoly(-1) * *this; }
  friend bool operator==(const WeylOperator& a, const WeylOperator& b) { return a.terms_ == b.terms_; }

  /// Composition. Moving d^b past xi^c uses, per variable,
  /// d^b xi^c = sum_j C(b,j) c!/(c-j)! xi^(c-j) d^(b-j).
  friend WeylOperator operator*(const WeylOperator& lhs, const WeylOperator& rhs) {
    WeylOperator out;
    for (const auto& [kl, cl] : lhs.terms_) {
      for (const auto& [kr, cr] : rhs.terms_) {
        // Expand variable by variable into partial (xi-power, d-power, weight)
        // lists, then take the cartesian product.
        struct Piece {
          MultiIndex xi{};
          MultiIndex d{};
          mpz_class weight{1};
        };
        std::vector<Piece> pieces{Piece{}};
        for (int v = 0; v < kWeylVars; ++v) {
          const auto vi = static_cast<std::size_t>(v);
          const unsigned b = kl.second[vi];
          const unsigned c = kr.first[vi];
          std::vector<Piece> next;
          for (const auto& p : pieces) {
            for (unsigned j = 0; j <= std::min(b, c); ++j) {
              Piece q = p;
              q.xi[vi] = static_cast<std::uint16_t>(kl.first[vi] + c - j);
              q.d[vi] = static_cast<std::uint16_t>(b - j + kr.second[vi]);
              mpz_class binom, fall(1);
              mpz_bin_uiui(binom.get_mpz_t(), b, j);
              for (unsigned t = 0; t < j; ++t) fall *= (c - t);
              q.weight *= binom * fall;
              next.push_back(q);
            }
          }
          pieces = std::move(next);
        }
        ParamPoly coeff = cl * cr;
        for (const auto& p : pieces) out.add(p.xi, p.d, ParamPoly(ExactScalar(Rational(p.weight))) * coeff);
      }
    }
    return out;
  }

  WeylOperator map_coefficients(const auto& f) const {
    WeylOperator out;
    for (const auto& [k, c] : terms_) out.add(k.first, k.second, f(c));
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += "(" + c.str() + ")";
      for (int v = 0; v < kWeylVars; ++v) {
        auto e = k.first[static_cast<std::size_t>(v)];
        if (e) s += "*xi" + std::to_string(v) + (e > 1 ? "^" + std::to_string(e) : "");
      }
      for (int v = 0; v < kWeylVars; ++v) {
        auto e = k.second[static_cast<std::size_t>(v)];
        if (e) s += "*d" + std::to_string(v) + (e > 1 ? "^" + std::to_string(e) : "");
      }
    }
    return s;
  }

 private:
  Terms terms_;
};

inline WeylOperator weyl_commutator(const WeylOperator& a, const WeylOperator& b) { return a * b - b * a; }

/// Drops every term whose power of ell exceeds n.
inline WeylOperator truncate_ell(const WeylOperator& w, unsigned n) {
  return w.map_coefficients([n](const ParamPoly& p) { return p.truncated(Symbol::ell, n); });
}

/// xi_mu = eta_{mu nu} xi^nu; xi^4 and d/dxi^4 carry no metric factor.
inline WeylOperator lower_xi(int mu) { return ParamPoly(eta(mu, mu)) * WeylOperator::xi(mu); }

/// Scalar representation of the flat (rho = 0) algebra, indexed like gen::.
///   P_mu = i d_mu,  M_{mu nu} = i(xi_mu d_nu - xi_nu d_mu),
///   x_mu = xi_mu + i ell (xi_mu d_4 - eps5 xi^4 d_mu),  I = 1 + i ell d_4.
inline std::vector<WeylOperator> build_rep(int eps5) {
  require_sign(eps5, "eps5");
  const ParamPoly i(ExactScalar::i());
  const ParamPoly i_ell = i * sym(Symbol::ell);
  std::vector<WeylOperator> rep(gen::kCount);
  for (auto [mu, nu] : gen::kLorentzPairs) {
    rep[gen::M(mu, nu)] = i * (lower_xi(mu) * WeylOperator::d(nu) - lower_xi(nu) * WeylOperator::d(mu));
  }
  for (int mu = 0; mu < 4; ++mu) {
    rep[gen::P(mu)] = i * WeylOperator::d(mu);
    rep[gen::X(mu)] = lower_xi(mu) + i_ell * (lower_xi(mu) * WeylOperator::d(4) -
                                              ParamPoly(eps5) * (WeylOperator::xi(4) * WeylOperator::d(mu)));
  }
  rep[gen::I] = WeylOperator(ParamPoly(1)) + i_ell * WeylOperator::d(4);
  return rep;
}

/// Image of a Lie-algebra element under the representation.
inline WeylOperator represent(const std::vector<WeylOperator>& rep, const LieVector& v) {
  WeylOperator out;
  for (const auto& [idx, c] : v.terms()) out += c * rep[idx];
  return out;
}

/// Generator families in the bracket table; [M, I] pairs are grouped with
/// the Lorentz family so the table keeps one row per bracket line.
enum class BracketFamily { MM, MP, Mx, PP, xx, Px, PI, xI };

inline constexpr std::array<BracketFamily, 8> kBracketFamilies = {
    BracketFamily::MM, BracketFamily::MP, BracketFamily::Mx, BracketFamily::PP,
    BracketFamily::xx, BracketFamily::Px, BracketFamily::PI, BracketFamily::xI};

inline std::string family_name(BracketFamily f) {
  switch (f) {
    case BracketFamily::MM: return "[M,M] and [M,I]";
    case BracketFamily::MP: return "[M,P]";
    case BracketFamily::Mx: return "[M,x]";
    case BracketFamily::PP: return "[P,P]";
    case BracketFamily::xx: return "[x,x]";
    case BracketFamily::Px: return "[P,x]";
    case BracketFamily::PI: return "[P,I]";
    case BracketFamily::xI: return "[x,I]";
  }
  return "?";
}

inline BracketFamily family_of(std::size_t a, std::size_t b) {
  auto kind = [](std::size_t g) {
    if (g < gen::kLorentzCount) return 0;
    if (g < gen::X(0)) return 1;
    if (g < gen::I) return 2;
    return 3;
  };
  int ka = kind(a), kb = kind(b);
  if (ka > kb) std::swap(ka, kb);
  if (ka == 0) {
    if (kb == 0 || kb == 3) return BracketFamily::MM;
    return kb == 1 ? BracketFamily::MP : BracketFamily::Mx;
  }
  if (ka == 1) {
    if (kb == 1) return BracketFamily::PP;
    return kb == 2 ? BracketFamily::Px : BracketFamily::PI;
  }
  return kb == 2 ? BracketFamily::xx : BracketFamily::xI;
}

struct ClosureResidual {
  std::size_t left = 0;
  std::size_t right = 0;
  WeylOperator residual;
};

struct FamilyClosure {
  BracketFamily family{};
  std::size_t pairs_checked = 0;
  std::vector<ClosureResidual> failures;
  bool ok() const { return failures.empty(); }
};

/// [rep X, rep Y] - rep([X, Y]) for all generator pairs of the flat algebra,
/// grouped into bracket families. Every residual must vanish with ell
/// symbolic.
inline std::vector<FamilyClosure> verify_rep_closure(int eps5) {
  const auto rep = build_rep(eps5);
  const auto flat = contract(build_deformed_algebra(1, eps5), {{Symbol::rho, ParamPoly(0)}});
  std::vector<FamilyClosure> table;
  for (auto f : kBracketFamilies) table.push_back({f, 0, {}});
  for (std::size_t a = 0; a < gen::kCount; ++a) {
    for (std::size_t b = a + 1; b < gen::kCount; ++b) {
      auto& row = table[static_cast<std::size_t>(family_of(a, b))];
      ++row.pairs_checked;
      WeylOperator diff = weyl_commutator(rep[a], rep[b]) - represent(rep, flat.bracket(a, b));
      if (!diff.is_zero()) row.failures.push_back({a, b, std::move(diff)});
    }
  }
  return table;
}

}  // namespace ncdirac
