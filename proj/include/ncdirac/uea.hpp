#pragma once

// Enveloping algebra of the flat deformed algebra with an adjoined inverse
// of I. Words are normal ordered by rewriting with the Lie brackets.

#include "ncdirac/lie_algebra.hpp"
#include "ncdirac/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncdirac {

/// Letters share indices with gen:: (M, p, x, I) and add the inverse of I.
/// The numeric order of a letter is its normal-ordering precedence.
using Letter = std::uint8_t;
inline constexpr Letter kInverseI = static_cast<Letter>(gen::kCount);
inline constexpr std::size_t kLetterCount = gen::kCount + 1;

inline std::string letter_name(Letter l) {
  static const auto labels = [] {
    auto v = gen::labels();
    for (int mu = 0; mu < 4; ++mu) v[gen::P(mu)] = "p" + std::to_string(mu);
    v.push_back("Iinv");
    return v;
  }();
  return labels.at(l);
}

using Word = std::vector<Letter>;

class TruncationOrderMissing : public std::invalid_argument {
 public:
  TruncationOrderMissing()
      : std::invalid_argument("expression contains the inverse of I; a truncation order is required") {}
};

/// Linear combination of words with ParamPoly coefficients.
class NCExpression {
 public:
  using Terms = std::map<Word, ParamPoly>;

  NCExpression() = default;
  NCExpression(const ParamPoly& c) { add({}, c); }  // NOLINT(google-explicit-constructor)

  static NCExpression letter(Letter l, const ParamPoly& c = ParamPoly(1)) {
    NCExpression e;
    e.add({l}, c);
    return e;
  }
  static NCExpression word(const Word& w, const ParamPoly& c = ParamPoly(1)) {
    NCExpression e;
    e.add(w, c);
    return e;
  }
  static NCExpression M(int mu, int nu) { return letter(static_cast<Letter>(gen::M(mu, nu))); }
  static NCExpression p(int mu) { return letter(static_cast<Letter>(gen::P(mu))); }
  static NCExpression x(int mu) { return letter(static_cast<Letter>(gen::X(mu))); }
  static NCExpression I() { return letter(static_cast<Letter>(gen::I)); }
  static NCExpression Iinv() { return letter(kInverseI); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  ParamPoly coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? ParamPoly() : it->second;
  }

  void add(const Word& w, const ParamPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool contains_inverse() const {
    for (const auto& [w, c] : terms_)
      if (std::find(w.begin(), w.end(), kInverseI) != w.end()) return true;
    return false;
  }

  /// Lowest power of ell over all coefficients; empty for the zero expression.
  std::optional<unsigned> min_ell_degree() const {
    std::optional<unsigned> best;
    for (const auto& [w, c] : terms_) {
      auto d = c.min_degree_in(Symbol::ell);
      if (d && (!best || *d < *best)) best = d;
    }
    return best;
  }

  NCExpression& operator+=(const NCExpression& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  NCExpression& operator-=(const NCExpression& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend NCExpression operator+(NCExpression a, const NCExpression& b) { return a += b; }
  friend NCExpression operator-(NCExpression a, const NCExpression& b) { return a -= b; }
  NCExpression operator-() const { return ParamPoly(-1) * *this; }
  friend NCExpression operator*(const ParamPoly& s, const NCExpression& e) {
    NCExpression out;
    for (const auto& [w, c] : e.terms_) out.add(w, s * c);
    return out;
  }
  /// Concatenation product; no reordering.
  friend NCExpression operator*(const NCExpression& a, const NCExpression& b) {
    NCExpression out;
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add(w, ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const NCExpression& a, const NCExpression& b) { return a.terms_ == b.terms_; }

  NCExpression map_coefficients(const auto& f) const {
    NCExpression out;
    for (const auto& [w, c] : terms_) out.add(w, f(c));
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += "(" + c.str() + ")";
      for (Letter l : w) s += "*" + letter_name(l);
    }
    return s;
  }

 private:
  Terms terms_;
};

/// Formal adjoint: reverse words, conjugate coefficients. All letters are
/// self-adjoint and the symbols are real.
inline NCExpression formal_conjugate(const NCExpression& e) {
  NCExpression out;
  for (const auto& [w, c] : e.terms()) out.add(Word(w.rbegin(), w.rend()), c.conj());
  return out;
}

enum class RewriteStrategy { Leftmost, Rightmost };

/// Derivation basis: d0..d3 and d4.
struct Derivation {
  int index = 0;
  static Derivation d(int a) {
    if (a < 0 || a > 4) throw std::invalid_argument("derivation index must be 0..4");
    return {a};
  }
  std::string name() const { return "d" + std::to_string(index); }
};

struct PlaneWaveIdentity {
  std::string name;
  NCExpression remainder;
  std::optional<unsigned> min_ell_degree;  // empty when the remainder is zero
  bool ok = false;
};

struct ExponentialLemmaCheck {
  unsigned max_power = 0;
  double max_residual = 0.0;
  bool ok = false;
};

struct PlaneWaveReport {
  int eps5 = 0;
  unsigned order = 0;
  std::vector<PlaneWaveIdentity> identities;
  ExponentialLemmaCheck lemma;
  bool ok() const {
    if (!lemma.ok) return false;
    return std::all_of(identities.begin(), identities.end(), [](const auto& i) { return i.ok; });
  }
};

class UEAEngine {
 public:
  explicit UEAEngine(int eps5)
      : eps5_(eps5), flat_(contract(build_deformed_algebra(1, eps5), {{Symbol::rho, ParamPoly(0)}})) {}

  int eps5() const { return eps5_; }

  /// Normal form. Inputs containing the inverse of I need a truncation
  /// order; when an order is given every coefficient is truncated in ell.
  NCExpression normal_form(const NCExpression& e, std::optional<unsigned> order = std::nullopt,
                           RewriteStrategy strategy = RewriteStrategy::Leftmost) const {
    if (!order && e.contains_inverse()) throw TruncationOrderMissing();
    NCExpression out = normal_form_exact(e, strategy);
    if (order) out = out.map_coefficients([n = *order](const ParamPoly& p) { return p.truncated(Symbol::ell, n); });
    return out;
  }

  NCExpression commutator(const NCExpression& a, const NCExpression& b,
                          std::optional<unsigned> order = std::nullopt) const {
    return normal_form(a * b - b * a, order);
  }
  NCExpression anticommutator(const NCExpression& a, const NCExpression& b,
                              std::optional<unsigned> order = std::nullopt) const {
    return normal_form(a * b + b * a, order);
  }

  /// Image of a single letter.
  NCExpression derivation_of_letter(Derivation d, Letter l) const {
    const ParamPoly ell = sym(Symbol::ell);
    if (l < gen::kLorentzCount) {
      if (d.index == 4) return {};
      auto [mu, nu] = gen::kLorentzPairs[l];
      // d_s(M_{mu nu}) = eta_{s mu} p_nu - eta_{s nu} p_mu
      return ParamPoly(eta(d.index, mu)) * NCExpression::p(nu) - ParamPoly(eta(d.index, nu)) * NCExpression::p(mu);
    }
    if (l >= gen::X(0) && l < gen::I) {
      const int mu = l - static_cast<int>(gen::X(0));
      if (d.index == 4) return ParamPoly(-eps5_) * ell * NCExpression::p(mu) * NCExpression::I();
      return ParamPoly(eta(d.index, mu)) * NCExpression::I();
    }
    // p, I, and hence the inverse of I, are annihilated.
    return {};
  }

  /// Leibniz extension to words, then normal form.
  NCExpression apply_derivation(Derivation d, const NCExpression& e,
                                std::optional<unsigned> order = std::nullopt) const {
    if (!order && e.contains_inverse()) throw TruncationOrderMissing();
    NCExpression raw;
    for (const auto& [w, c] : e.terms()) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        NCExpression image = derivation_of_letter(d, w[i]);
        if (image.is_zero()) continue;
        NCExpression left = NCExpression::word(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)), c);
        NCExpression right = NCExpression::word(Word(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end()));
        raw += left * image * right;
      }
    }
    return normal_form(raw, order);
  }

  /// A = -(i/2) k_nu {x^nu, I^-1} with lower-index symbols k0..k3.
  NCExpression plane_wave_exponent(unsigned order) const {
    NCExpression kx;
    for (int nu = 0; nu < 4; ++nu) kx += ParamPoly(eta(nu, nu)) * sym(momentum_symbol(nu)) * NCExpression::x(nu);
    const ParamPoly c = ParamPoly(ExactScalar(Rational(0), make_rational(-1, 2)));
    return c * anticommutator(kx, NCExpression::Iinv(), order);
  }

  /// Replaces every p_mu by k_mu, valid for operators acting on exp(A)|0>
  /// with p|0> = 0. Only words made of momenta are allowed.
  ParamPoly act_on_plane_wave(const NCExpression& e) const {
    ParamPoly out;
    for (const auto& [w, c] : e.terms()) {
      ParamPoly term = c;
      for (Letter l : w) {
        if (l < gen::P(0) || l >= gen::X(0)) {
          throw std::invalid_argument("act_on_plane_wave: word " + NCExpression::word(w).str() +
                                      " is not a pure momentum word");
        }
        term *= sym(momentum_symbol(l - static_cast<int>(gen::P(0))));
      }
      out += term;
    }
    return out;
  }

  /// The three plane-wave identities plus a numeric check of the
  /// central-commutator exponential lemma.
  PlaneWaveReport verify_plane_wave_relations(unsigned order) const {
    if (order < 1) throw std::invalid_argument("truncation order must be at least 1");
    PlaneWaveReport rep;
    rep.eps5 = eps5_;
    rep.order = order;
    const NCExpression A = exact_plane_wave_exponent();
    const ParamPoly ell = sym(Symbol::ell);
    const ParamPoly i(ExactScalar::i());

    auto record = [&](std::string name, NCExpression rem) {
      PlaneWaveIdentity id;
      id.name = std::move(name);
      id.min_ell_degree = rem.min_ell_degree();
      id.ok = rem.is_zero() || (id.min_ell_degree && *id.min_ell_degree >= order + 1);
      id.remainder = std::move(rem);
      rep.identities.push_back(std::move(id));
    };
    for (int mu = 0; mu < 4; ++mu) {
      NCExpression lhs = normal_form_exact(NCExpression::p(mu) * A - A * NCExpression::p(mu));
      record("[p" + std::to_string(mu) + ",A] - k" + std::to_string(mu), lhs - sym(momentum_symbol(mu)));
    }
    const NCExpression dA = exact_derivation(Derivation::d(4), A);
    record("d4(A) - i eps5 ell k.p", dA - ParamPoly(eps5_) * i * ell * k_dot_p());
    NCExpression AdA = normal_form_exact(A * dA - dA * A);
    record("[A,d4(A)] + i eps5 ell k^2", AdA + ParamPoly(eps5_) * i * ell * k_squared());

    rep.lemma = exponential_lemma_check(8);
    return rep;
  }

  /// Graded check of the exponential lemma with ell = 1/10, k = (1,0,0,0)
  /// substituted after every rewriting pass:
  /// for each n <= max_power compare d4(A^n)/n! with
  /// d4(A) A^{n-1}/(n-1)! + [A, d4 A] A^{n-2}/(2 (n-2)!), and [p_mu, A^n]/n!
  /// with k_mu A^{n-1}/(n-1)!.
  ExponentialLemmaCheck exponential_lemma_check(unsigned max_power) const {
    const Bindings point = {{Symbol::ell, ParamPoly(ExactScalar(make_rational(1, 10)))},
                            {Symbol::k0, ParamPoly(1)},
                            {Symbol::k1, ParamPoly(0)},
                            {Symbol::k2, ParamPoly(0)},
                            {Symbol::k3, ParamPoly(0)}};
    auto at_point = [&](const NCExpression& e) {
      return e.map_coefficients([&](const ParamPoly& p) { return substitute(p, point); });
    };
    const NCExpression A = at_point(exact_plane_wave_exponent());
    const NCExpression dA = at_point(exact_derivation(Derivation::d(4), exact_plane_wave_exponent()));
    const NCExpression AdA = at_point(normal_form_exact(A * dA - dA * A));

    std::vector<NCExpression> powers{NCExpression(ParamPoly(1))};
    for (unsigned n = 1; n <= max_power; ++n) powers.push_back(at_point(normal_form_exact(powers.back() * A)));

    auto residual = [](const NCExpression& e) {
      double worst = 0.0;
      for (const auto& [w, c] : e.terms()) {
        if (!c.is_constant()) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::abs(c.constant_term().to_complex()));
      }
      return worst;
    };
    ExponentialLemmaCheck out;
    out.max_power = max_power;
    Rational fact(1);
    for (unsigned n = 1; n <= max_power; ++n) {
      const Rational prev_fact = fact;  // (n-1)!
      fact *= n;
      const ParamPoly inv_n(ExactScalar(Rational(1 / fact)));
      const ParamPoly inv_prev(ExactScalar(Rational(1 / prev_fact)));
      NCExpression lhs = inv_n * at_point(exact_derivation(Derivation::d(4), powers[n]));
      NCExpression rhs = inv_prev * (dA * powers[n - 1]);
      if (n >= 2) rhs += ParamPoly(ExactScalar(Rational(n - 1) / (2 * prev_fact))) * (AdA * powers[n - 2]);
      out.max_residual = std::max(out.max_residual, residual(at_point(normal_form_exact(lhs - rhs))));
      for (int mu = 0; mu < 4; ++mu) {
        const NCExpression& An = powers[n];
        NCExpression comm = inv_n * at_point(normal_form_exact(NCExpression::p(mu) * An - An * NCExpression::p(mu)));
        const ParamPoly k = substitute(sym(momentum_symbol(mu)), point);
        out.max_residual = std::max(out.max_residual, residual(comm - inv_prev * k * powers[n - 1]));
      }
    }
    out.ok = out.max_residual < 1e-8;
    return out;
  }

  NCExpression k_dot_p() const {
    NCExpression out;
    for (int nu = 0; nu < 4; ++nu) out += ParamPoly(eta(nu, nu)) * sym(momentum_symbol(nu)) * NCExpression::p(nu);
    return out;
  }
  static ParamPoly k_squared() {
    ParamPoly out;
    for (int nu = 0; nu < 4; ++nu) out += ParamPoly(eta(nu, nu)) * sym(momentum_symbol(nu), 2);
    return out;
  }

  /// Normal form without truncation. Rewriting through the inverse of I is
  /// finite here, so no order is needed internally.
  NCExpression normal_form_exact(const NCExpression& e, RewriteStrategy strategy = RewriteStrategy::Leftmost) const {
    NCExpression done;
    std::map<Word, ParamPoly> pending(e.terms().begin(), e.terms().end());
    while (!pending.empty()) {
      auto node = pending.extract(pending.begin());
      const Word& w = node.key();
      const ParamPoly& c = node.mapped();
      auto pos = reducible_position(w, strategy);
      if (!pos) {
        done.add(w, c);
        continue;
      }
      const NCExpression step = rewrite_at(w, *pos);
      for (const auto& [nw, nc] : step.terms()) {
        ParamPoly v = c * nc;
        auto [it, inserted] = pending.emplace(nw, v);
        if (!inserted) {
          it->second += v;
          if (it->second.is_zero()) pending.erase(it);
        }
      }
    }
    return done;
  }

  NCExpression exact_derivation(Derivation d, const NCExpression& e) const {
    NCExpression raw;
    for (const auto& [w, c] : e.terms()) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        NCExpression image = derivation_of_letter(d, w[i]);
        if (image.is_zero()) continue;
        raw += NCExpression::word(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)), c) * image *
               NCExpression::word(Word(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end()));
      }
    }
    return normal_form_exact(raw);
  }

  NCExpression exact_plane_wave_exponent() const {
    NCExpression kx;
    for (int nu = 0; nu < 4; ++nu) kx += ParamPoly(eta(nu, nu)) * sym(momentum_symbol(nu)) * NCExpression::x(nu);
    const ParamPoly c = ParamPoly(ExactScalar(Rational(0), make_rational(-1, 2)));
    return c * normal_form_exact(kx * NCExpression::Iinv() + NCExpression::Iinv() * kx);
  }

  static bool is_normal(const Word& w) { return !reducible_position(w, RewriteStrategy::Leftmost); }

 private:
  static bool reducible(Letter a, Letter b) {
    if (a == gen::I && b == kInverseI) return true;
    if (a == kInverseI && b == kInverseI) return false;
    return a > b;
  }

  static std::optional<std::size_t> reducible_position(const Word& w, RewriteStrategy s) {
    if (w.size() < 2) return std::nullopt;
    if (s == RewriteStrategy::Leftmost) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (reducible(w[i], w[i + 1])) return i;
    } else {
      for (std::size_t i = w.size() - 1; i-- > 0;)
        if (reducible(w[i], w[i + 1])) return i;
    }
    return std::nullopt;
  }

  /// One rewrite of the pair (w[i], w[i+1]).
  NCExpression rewrite_at(const Word& w, std::size_t i) const {
    const Letter a = w[i], b = w[i + 1];
    const Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    const Word right(w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
    auto join = [&](std::initializer_list<Letter> mid) {
      Word out = left;
      out.insert(out.end(), mid.begin(), mid.end());
      out.insert(out.end(), right.begin(), right.end());
      return out;
    };
    NCExpression out;
    if ((a == gen::I && b == kInverseI) || (a == kInverseI && b == gen::I)) {
      out.add(join({}), ParamPoly(1));
      return out;
    }
    if (a == kInverseI) {
      // I^-1 Y = Y I^-1 - I^-1 [I, Y] I^-1
      out.add(join({b, kInverseI}), ParamPoly(1));
      const LieVector br = flat_.bracket(gen::I, b);
      for (const auto& [g, c] : br.terms())
        out.add(join({kInverseI, static_cast<Letter>(g), kInverseI}), -c);
      return out;
    }
    // a Y with a > Y: Y a + [a, Y]
    out.add(join({b, a}), ParamPoly(1));
    const LieVector br = flat_.bracket(a, b);
    for (const auto& [g, c] : br.terms()) out.add(join({static_cast<Letter>(g)}), c);
    return out;
  }

  int eps5_;
  StructureConstants flat_;
};

}  // namespace ncdirac
