#pragma once

// Univariate polynomials over the rationals: interpolation, gcd, Sturm
// sequences and exact real-root isolation.

#include "ncdirac/scalars.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncdirac {

/// c[0] + c[1] x + ... ; no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  double operator()(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
  }

  UPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (c_.empty()) return {};
    std::vector<Rational> m = c_;
    const Rational l = lead();
    for (auto& x : m) x /= l;
    return UPoly(std::move(m));
  }

  friend UPoly operator-(const UPoly& a) {
    std::vector<Rational> m = a.c_;
    for (auto& x : m) x = -x;
    return UPoly(std::move(m));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    const int db = b.degree();
    std::vector<Rational> q(static_cast<std::size_t>(std::max(0, a.degree() - db + 1)));
    for (int d = a.degree(); d >= db; --d) {
      const Rational f = r[static_cast<std::size_t>(d)] / b.lead();
      q[static_cast<std::size_t>(d - db)] = f;
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(d - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[i].get_str() + ")";
      if (i > 0) s += "*x^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Lagrange interpolation through (xs[i], ys[i]).
inline UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate: bad sample sets");
  const std::size_t n = xs.size();
  std::vector<Rational> out(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    // basis polynomial prod_{j != i} (x - xj) / (xi - xj)
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[j];
    }
    const Rational scale = ys[i] / denom;
    for (std::size_t t = 0; t < n; ++t) out[t] += basis[t] * scale;
  }
  return UPoly(std::move(out));
}

/// Square-free part p / gcd(p, p').
inline UPoly square_free(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return UPoly::divmod(p, UPoly::gcd(p, p.derivative())).first.monic();
}

inline std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    UPoly r = -UPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

inline int sign_changes(const std::vector<UPoly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi) {
  if (lo > hi) std::swap(lo, hi);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
  if (sgn(hi) < 0) return -simplest_between(-hi, -lo);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi share the integer part; recurse on reciprocals of fractional parts.
  const Rational rest = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl) + 1 / rest;
}

struct RealRoot {
  Rational lo;  // isolating interval [lo, hi]; lo == hi for exact roots
  Rational hi;
  bool exact = false;
  double value() const { return exact ? lo.get_d() : Rational((lo + hi) / 2).get_d(); }
};

class RootIsolationError : public std::runtime_error {
 public:
  RootIsolationError(const Rational& lo, const Rational& hi, int iterations)
      : std::runtime_error("root refinement did not converge after " + std::to_string(iterations) +
                           " steps; bracket [" + lo.get_str() + ", " + hi.get_str() + "] (~[" +
                           std::to_string(lo.get_d()) + ", " + std::to_string(hi.get_d()) + "])"),
        lo_(lo),
        hi_(hi) {}
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

 private:
  Rational lo_, hi_;
};

/// Real roots of a square-free polynomial. Each root is either hit exactly
/// (the simplest rational in its bracket is tried at every step) or bracketed
/// with hi - lo <= rel * max(|lo|, |hi|).
inline std::vector<RealRoot> isolate_real_roots(const UPoly& p, const Rational& rel = Rational(mpz_class(1),
                                                                                               mpz_class("1000000000000000000000000000000")),
                                                int max_steps = 2000) {
  std::vector<RealRoot> roots;
  if (p.degree() <= 0) return roots;
  // Cauchy bound
  Rational bound = 0;
  for (int i = 0; i < p.degree(); ++i) bound = std::max(bound, Rational(abs(p.coeff(static_cast<std::size_t>(i)) / p.lead())));
  bound += 1;
  const auto seq = sturm_sequence(p);
  auto count = [&](const Rational& a, const Rational& b) { return sign_changes(seq, a) - sign_changes(seq, b); };

  // Work items are half-open brackets (a, b].
  std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const int n = count(a, b);
    if (n == 0) continue;
    if (n > 1) {
      const Rational mid = (a + b) / 2;
      work.push_back({mid, b});
      work.push_back({a, mid});
      continue;
    }
    RealRoot r{a, b, false};
    int step = 0;
    for (;; ++step) {
      if (step >= max_steps) throw RootIsolationError(r.lo, r.hi, step);
      const Rational cand = simplest_between(r.lo, r.hi);
      if (cand > r.lo && p(cand) == 0) {
        r = {cand, cand, true};
        break;
      }
      if (p(r.hi) == 0) {
        r = {r.hi, r.hi, true};
        break;
      }
      if (r.hi - r.lo <= rel * std::max(Rational(abs(r.lo)), Rational(abs(r.hi)))) break;
      const Rational mid = (r.lo + r.hi) / 2;
      if (count(r.lo, mid) == 1) r.hi = mid;
      else r.lo = mid;
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](const RealRoot& x, const RealRoot& y) { return x.lo < y.lo; });
  return roots;
}

}  // namespace ncdirac
