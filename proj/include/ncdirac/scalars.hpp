#pragma once

// Exact coefficient tower: Gaussian rationals, multivariate parameter
// polynomials and series truncated in the fundamental length.

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ncdirac {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "p/q" or a plain decimal such as "-0.125" / "1e-3" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
  }
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    try {
      exp10 = std::stol(s.substr(e + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in literal: " + s);
    }
  }
  bool neg = false;
  std::size_t pos = 0;
  if (pos < mant.size() && (mant[pos] == '+' || mant[pos] == '-')) {
    neg = mant[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (; pos < mant.size(); ++pos) {
    char c = mant[pos];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("bad rational literal: " + s);
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad rational literal: " + s);
  mpz_class num(digits, 10);
  long shift = exp10 - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Gaussian rational re + i*im, always canonical.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  ExactScalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static ExactScalar i() { return {Rational(0), Rational(1)}; }

  /// Exact conversion of a finite double (every double is a dyadic rational).
  static ExactScalar from_double(double re, double im = 0.0) {
    return {Rational(re), Rational(im)};
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_imaginary() const { return sgn(re_) == 0; }

  ExactScalar conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  ExactScalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    Rational n = norm2();
    return {re_ / n, -im_ / n};
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  ExactScalar operator-() const { return {-re_, -im_}; }
  ExactScalar& operator+=(const ExactScalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ExactScalar& operator*=(const ExactScalar& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  ExactScalar& operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string imag;
    if (im_ == 1) {
      imag = "i";
    } else if (im_ == -1) {
      imag = "-i";
    } else {
      imag = im_.get_str() + "i";
    }
    if (sgn(re_) == 0) return imag;
    return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag + ")";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.str(); }

// ---------------------------------------------------------------------------
// Formal parameters

/// Fixed symbol list; its order defines the monomial order.
enum class Symbol : std::uint8_t { ell, rho, k0, k1, k2, k3, mu, v, m, g, gbar, r };

inline constexpr std::size_t kSymbolCount = 12;

inline constexpr std::array<std::string_view, kSymbolCount> kSymbolNames = {
    "ell", "rho", "k0", "k1", "k2", "k3", "mu", "v", "m", "g", "gbar", "r"};

inline std::string_view symbol_name(Symbol s) { return kSymbolNames[static_cast<std::size_t>(s)]; }

inline Symbol symbol_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (kSymbolNames[i] == name) return static_cast<Symbol>(i);
  }
  throw std::invalid_argument("unknown symbol: " + std::string(name));
}

inline Symbol momentum_symbol(int mu) { return static_cast<Symbol>(static_cast<int>(Symbol::k0) + mu); }

using Monomial = std::array<std::uint16_t, kSymbolCount>;

inline unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Lexicographic on the symbol list. Distinct exponent vectors never tie, so
/// the total-degree tiebreak never fires and is not spelled out.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return a < b; }
};

/// Polynomial in the formal parameters with Gaussian-rational coefficients.
/// Zero coefficients are never stored, so structural equality is equality.
class ParamPoly {
 public:
  using Terms = std::map<Monomial, ExactScalar, MonomialLess>;

  ParamPoly() = default;
  ParamPoly(const ExactScalar& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  ParamPoly(long c) : ParamPoly(ExactScalar(c)) {}  // NOLINT

  static ParamPoly symbol(Symbol s, unsigned power = 1) {
    Monomial m{};
    m[static_cast<std::size_t>(s)] = static_cast<std::uint16_t>(power);
    return term(m, ExactScalar(1));
  }

  static ParamPoly term(const Monomial& m, const ExactScalar& c) {
    ParamPoly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
  }

  /// Builds from unnormalised (monomial, coefficient) pairs; duplicates merge.
  static ParamPoly from_terms(std::initializer_list<std::pair<Monomial, ExactScalar>> list) {
    ParamPoly p;
    for (const auto& [m, c] : list) p.add_term(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
  }

  ExactScalar constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? ExactScalar() : it->second;
  }

  bool contains(Symbol s) const {
    for (const auto& [m, c] : terms_) {
      if (m[static_cast<std::size_t>(s)] != 0) return true;
    }
    return false;
  }

  unsigned degree_in(Symbol s) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m[static_cast<std::size_t>(s)]);
    return d;
  }

  /// Lowest power of s over all terms; nullopt for the zero polynomial.
  std::optional<unsigned> min_degree_in(Symbol s) const {
    std::optional<unsigned> d;
    for (const auto& [m, c] : terms_) {
      unsigned e = m[static_cast<std::size_t>(s)];
      if (!d || e < *d) d = e;
    }
    return d;
  }

  void add_term(const Monomial& m, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ParamPoly operator-() const {
    ParamPoly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }
  ParamPoly& operator+=(const ParamPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  ParamPoly& operator-=(const ParamPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  ParamPoly& operator*=(const ParamPoly& o) {
    *this = *this * o;
    return *this;
  }
  ParamPoly& operator*=(const ExactScalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m{};
        for (std::size_t i = 0; i < kSymbolCount; ++i) m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }
  friend ParamPoly operator*(ParamPoly a, const ExactScalar& s) { return a *= s; }
  friend ParamPoly operator*(const ExactScalar& s, ParamPoly a) { return a *= s; }
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

  ParamPoly pow(unsigned n) const {
    ParamPoly out(1);
    for (unsigned i = 0; i < n; ++i) out *= *this;
    return out;
  }

  /// Complex conjugation of coefficients; symbols are treated as real.
  ParamPoly conj() const {
    ParamPoly p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, c.conj());
    return p;
  }

  /// Drops every term whose power of s exceeds n.
  ParamPoly truncated(Symbol s, unsigned n) const {
    ParamPoly p;
    for (const auto& [m, c] : terms_) {
      if (m[static_cast<std::size_t>(s)] <= n) p.terms_.emplace(m, c);
    }
    return p;
  }

  /// Coefficient of s^n as a polynomial in the remaining symbols.
  ParamPoly coefficient_of(Symbol s, unsigned n) const {
    ParamPoly p;
    for (const auto& [m, c] : terms_) {
      if (m[static_cast<std::size_t>(s)] == n) {
        Monomial rest = m;
        rest[static_cast<std::size_t>(s)] = 0;
        p.terms_.emplace(rest, c);
      }
    }
    return p;
  }

  template <typename Values>
  std::complex<double> evaluate(const Values& values) const {
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = c.to_complex();
      for (std::size_t i = 0; i < kSymbolCount; ++i) {
        for (unsigned e = 0; e < m[i]; ++e) t *= values[i];
      }
      sum += t;
    }
    return sum;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string coeff = c.str();
      bool unit_monomial = m == Monomial{};
      if (!first) {
        if (!coeff.empty() && coeff[0] == '-') {
          os << " - ";
          coeff.erase(0, 1);
        } else {
          os << " + ";
        }
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < kSymbolCount; ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += kSymbolNames[i];
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      if (unit_monomial) {
        os << coeff;
      } else if (coeff == "1") {
        os << mono;
      } else if (coeff == "-1") {
        os << "-" << mono;
      } else {
        os << coeff << "*" << mono;
      }
    }
    return os.str();
  }

 private:
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const ParamPoly& p) { return os << p.str(); }

inline ParamPoly sym(Symbol s, unsigned power = 1) { return ParamPoly::symbol(s, power); }

/// Canonical form. ParamPoly keeps itself canonical, so this is the identity
/// on values built through the public API; it rebuilds from terms anyway.
inline ParamPoly normalize(const ParamPoly& p) {
  ParamPoly out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, c);
  return out;
}

using Bindings = std::map<Symbol, ParamPoly>;

/// Simultaneous substitution. A binding whose value mentions any bound
/// symbol is rejected, which rules out cycles.
inline ParamPoly substitute(const ParamPoly& p, const Bindings& bindings) {
  for (const auto& [s, value] : bindings) {
    for (const auto& [t, ignored] : bindings) {
      if (value.contains(t)) {
        throw std::invalid_argument("binding for " + std::string(symbol_name(s)) +
                                    " reintroduces bound symbol " + std::string(symbol_name(t)));
      }
    }
  }
  ParamPoly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept = m;
    ParamPoly factor(c);
    for (const auto& [s, value] : bindings) {
      auto idx = static_cast<std::size_t>(s);
      if (m[idx] == 0) continue;
      factor *= value.pow(m[idx]);
      kept[idx] = 0;
    }
    out += factor * ParamPoly::term(kept, ExactScalar(1));
  }
  return out;
}

/// Reduces powers of r modulo the side relation r^2 = rho.
inline ParamPoly reduce_radius(const ParamPoly& p) {
  ParamPoly out;
  const auto ri = static_cast<std::size_t>(Symbol::r);
  const auto rhoi = static_cast<std::size_t>(Symbol::rho);
  for (const auto& [m, c] : p.terms()) {
    Monomial n = m;
    n[rhoi] = static_cast<std::uint16_t>(n[rhoi] + m[ri] / 2);
    n[ri] = static_cast<std::uint16_t>(m[ri] % 2);
    out.add_term(n, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Polynomial with every power of ell above `order` discarded.
class TruncatedSeries {
 public:
  TruncatedSeries(const ParamPoly& p, unsigned order) : poly_(p.truncated(Symbol::ell, order)), order_(order) {}

  const ParamPoly& poly() const { return poly_; }
  unsigned order() const { return order_; }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    return {a.poly_ + b.poly_, std::min(a.order_, b.order_)};
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return {a.poly_ - b.poly_, std::min(a.order_, b.order_)};
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    unsigned n = std::min(a.order_, b.order_);
    return {a.poly_.truncated(Symbol::ell, n) * b.poly_.truncated(Symbol::ell, n), n};
  }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.order_ == b.order_ && a.poly_ == b.poly_;
  }

  /// Geometric inverse; requires the ell^0 part to be a nonzero constant.
  TruncatedSeries inverse() const {
    ParamPoly head = poly_.coefficient_of(Symbol::ell, 0);
    if (!head.is_constant() || head.is_zero()) {
      throw std::domain_error("series inverse needs an invertible constant leading term");
    }
    ExactScalar inv = head.constant_term().inverse();
    TruncatedSeries tail(-(poly_ - head) * inv, order_);
    TruncatedSeries power(ParamPoly(1), order_);
    TruncatedSeries sum(ParamPoly(1), order_);
    for (unsigned k = 1; k <= order_; ++k) {
      power = power * tail;
      sum = sum + power;
    }
    return {sum.poly_ * inv, order_};
  }

 private:
  ParamPoly poly_;
  unsigned order_;
};

inline TruncatedSeries series_truncate(const ParamPoly& p, unsigned order) { return {p, order}; }

}  // namespace ncdirac
