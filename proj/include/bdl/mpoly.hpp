#pragma once
// Sparse multivariate polynomials over an exact field scalar K.
// Monomials are sorted sparse exponent vectors; terms live in a map under
// lexicographic order with u most significant, so representations are
// canonical and iteration deterministic.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bdl/rat.hpp"
#include "bdl/symbols.hpp"

namespace bdl {

// exponents sorted by symbol id, all positive
using Mono = std::vector<std::pair<Sym, int>>;

inline int mono_exp(const Mono& m, Sym s) {
  for (auto& [t, e] : m)
    if (t == s) return e;
  return 0;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
    else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return r;
}

inline std::optional<Mono> mono_div(const Mono& a, const Mono& b) {
  Mono r;
  std::size_t i = 0;
  for (auto& [s, e] : b) {
    while (i < a.size() && a[i].first < s) r.push_back(a[i++]);
    if (i == a.size() || a[i].first != s || a[i].second < e) return std::nullopt;
    if (a[i].second > e) r.emplace_back(s, a[i].second - e);
    ++i;
  }
  while (i < a.size()) r.push_back(a[i++]);
  return r;
}

// lex order, smaller symbol id = more significant variable
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      Sym sa = i < a.size() ? a[i].first : ~Sym(0);
      Sym sb = j < b.size() ? b[j].first : ~Sym(0);
      if (sa == sb) {
        if (a[i].second != b[j].second) return a[i].second < b[j].second;
        ++i, ++j;
      } else if (sa < sb) {
        return false;  // a has a positive power of the more significant symbol
      } else {
        return true;
      }
    }
    return false;
  }
};

template <class K>
struct MPoly {
  std::map<Mono, K, MonoLess> t;

  MPoly() = default;
  static MPoly zero() { return MPoly(); }
  static MPoly constant(const K& c) {
    MPoly p;
    if (!bdl::is_zero(c)) p.t.emplace(Mono{}, c);
    return p;
  }
  static MPoly from_int(long n) { return constant(K(n)); }
  static MPoly var(Sym s, int e = 1) {
    MPoly p;
    p.t.emplace(Mono{{s, e}}, K(1L));
    return p;
  }

  bool is_zero() const { return t.empty(); }
  bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first.empty()); }
  K constant_value() const {
    if (t.empty()) return K(0L);
    if (!is_constant()) throw std::logic_error("MPoly: not a constant");
    return t.begin()->second;
  }

  // leading term under the global lex order
  const Mono& lead_mono() const { return t.rbegin()->first; }
  const K& lead_coeff() const { return t.rbegin()->second; }

  void add_term(const Mono& m, const K& c) {
    if (bdl::is_zero(c)) return;
    auto it = t.find(m);
    if (it == t.end()) {
      t.emplace(m, c);
    } else {
      it->second += c;
      if (bdl::is_zero(it->second)) t.erase(it);
    }
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (auto& [m, c] : b.t) r.add_term(m, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (auto& [m, c] : b.t) r.add_term(m, -c);
    return r;
  }
  friend MPoly operator-(const MPoly& a) {
    MPoly r;
    for (auto& [m, c] : a.t) r.t.emplace(m, -c);
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (auto& [ma, ca] : a.t)
      for (auto& [mb, cb] : b.t) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
  }
  MPoly& operator+=(const MPoly& b) { return *this = *this + b; }
  MPoly& operator-=(const MPoly& b) { return *this = *this - b; }
  MPoly& operator*=(const MPoly& b) { return *this = *this * b; }

  friend MPoly operator*(const MPoly& a, const K& c) {
    MPoly r;
    if (bdl::is_zero(c)) return r;
    for (auto& [m, cc] : a.t) r.t.emplace(m, cc * c);
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.t.size() != b.t.size()) return false;
    auto ia = a.t.begin();
    auto ib = b.t.begin();
    for (; ia != a.t.end(); ++ia, ++ib) {
      if (MonoLess{}(ia->first, ib->first) || MonoLess{}(ib->first, ia->first)) return false;
      if (!(ia->second == ib->second)) return false;
    }
    return true;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly pow(int e) const {
    MPoly r = from_int(1);
    MPoly b = *this;
    while (e) {
      if (e & 1) r *= b;
      if (e >>= 1) b *= b;
    }
    return r;
  }

  int degree(Sym s) const {
    int d = 0;
    for (auto& [m, c] : t) d = std::max(d, mono_exp(m, s));
    return d;
  }

  std::set<Sym> symbols() const {
    std::set<Sym> r;
    for (auto& [m, c] : t)
      for (auto& [s, e] : m) r.insert(s);
    return r;
  }

  // coefficient of s^k, a polynomial in the remaining symbols
  MPoly coeff_of(Sym s, int k) const {
    MPoly r;
    for (auto& [m, c] : t) {
      if (mono_exp(m, s) != k) continue;
      Mono mm;
      for (auto& [ss, e] : m)
        if (ss != s) mm.emplace_back(ss, e);
      r.add_term(mm, c);
    }
    return r;
  }

  MPoly derivative(Sym s) const {
    MPoly r;
    for (auto& [m, c] : t) {
      int e = mono_exp(m, s);
      if (e == 0) continue;
      Mono mm;
      for (auto& [ss, ee] : m) {
        if (ss == s) {
          if (ee > 1) mm.emplace_back(ss, ee - 1);
        } else {
          mm.emplace_back(ss, ee);
        }
      }
      r.add_term(mm, c * K(static_cast<long>(e)));
    }
    return r;
  }

  std::string to_string() const {
    if (t.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      if (!first) out += " + ";
      first = false;
      out += bdl::str(it->second);
      for (auto& [s, e] : it->first) {
        out += "*" + sym_name(s);
        if (e > 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }
};

// Exact single-divisor division; nullopt when not divisible.
template <class K>
std::optional<MPoly<K>> try_divide(const MPoly<K>& a, const MPoly<K>& b) {
  if (b.is_zero()) throw std::domain_error("MPoly division by zero");
  MPoly<K> rem = a, quo;
  const Mono& lb = b.lead_mono();
  const K& cb = b.lead_coeff();
  K cbi = inverse(cb);
  while (!rem.is_zero()) {
    auto q = mono_div(rem.lead_mono(), lb);
    if (!q) return std::nullopt;
    K c = rem.lead_coeff() * cbi;
    MPoly<K> term;
    term.t.emplace(*q, c);
    quo += term;
    rem -= term * b;
  }
  return quo;
}

template <class K>
MPoly<K> divexact(const MPoly<K>& a, const MPoly<K>& b) {
  auto q = try_divide(a, b);
  if (!q) throw std::logic_error("MPoly: inexact division");
  return *q;
}

namespace detail {

// univariate view in symbol s, coefficients in the remaining symbols
template <class K>
std::vector<MPoly<K>> coeff_list(const MPoly<K>& p, Sym s) {
  int d = p.degree(s);
  std::vector<MPoly<K>> c(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) c[static_cast<std::size_t>(k)] = p.coeff_of(s, k);
  return c;
}

template <class K>
MPoly<K> from_coeff_list(const std::vector<MPoly<K>>& c, Sym s) {
  MPoly<K> r;
  MPoly<K> x = MPoly<K>::var(s);
  MPoly<K> xp = MPoly<K>::from_int(1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    r += c[k] * xp;
    if (k + 1 < c.size()) xp *= x;
  }
  return r;
}

}  // namespace detail

template <class K>
MPoly<K> gcd(const MPoly<K>& a, const MPoly<K>& b);

namespace detail {

// content of p w.r.t. s: gcd of its s-coefficients
template <class K>
MPoly<K> content(const MPoly<K>& p, Sym s) {
  MPoly<K> g;
  for (auto& c : coeff_list(p, s)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

// pseudo-remainder of f by g in s
template <class K>
MPoly<K> prem(MPoly<K> f, const MPoly<K>& g, Sym s) {
  int dg = g.degree(s);
  MPoly<K> lg = g.coeff_of(s, dg);
  MPoly<K> x = MPoly<K>::var(s);
  while (!f.is_zero() && f.degree(s) >= dg) {
    int df = f.degree(s);
    MPoly<K> lf = f.coeff_of(s, df);
    f = f * lg - g * (lf * x.pow(df - dg));
  }
  return f;
}

template <class K>
MPoly<K> monic(const MPoly<K>& p) {
  if (p.is_zero()) return p;
  return p * inverse(p.lead_coeff());
}

}  // namespace detail

namespace detail {

// remainder in K[s], both inputs univariate in s
template <class K>
MPoly<K> urem(MPoly<K> f, const MPoly<K>& g, Sym s) {
  int dg = g.degree(s);
  K lgi = inverse(g.coeff_of(s, dg).constant_value());
  MPoly<K> x = MPoly<K>::var(s);
  while (!f.is_zero()) {
    int df = f.degree(s);
    if (df < dg) break;
    K c = f.coeff_of(s, df).constant_value() * lgi;
    f -= g * (x.pow(df - dg) * c);
  }
  return f;
}

}  // namespace detail

template <class K>
MPoly<K> gcd(const MPoly<K>& a, const MPoly<K>& b) {
  if (a.is_zero()) return detail::monic(b);
  if (b.is_zero()) return detail::monic(a);
  if (a.is_constant() || b.is_constant()) return MPoly<K>::from_int(1);
  auto syms_a = a.symbols();
  auto syms_b = b.symbols();
  Sym s = std::min(*syms_a.begin(), *syms_b.begin());
  if (a.degree(s) == 0) return gcd(a, detail::content(b, s));
  if (b.degree(s) == 0) return gcd(b, detail::content(a, s));
  if (syms_a.size() == 1 && syms_b.size() == 1) {
    // univariate over the ground field: monic Euclid
    MPoly<K> f = a, g = b;
    if (f.degree(s) < g.degree(s)) std::swap(f, g);
    while (!g.is_zero()) {
      MPoly<K> r = detail::urem(f, g, s);
      f = g;
      g = detail::monic(r);
    }
    return detail::monic(f);
  }
  MPoly<K> ca = detail::content(a, s);
  MPoly<K> cb = detail::content(b, s);
  MPoly<K> f = divexact(a, ca);
  MPoly<K> g = divexact(b, cb);
  MPoly<K> cg = gcd(ca, cb);
  if (f.degree(s) < g.degree(s)) std::swap(f, g);
  // primitive polynomial remainder sequence
  while (true) {
    MPoly<K> r = detail::prem(f, g, s);
    if (r.is_zero()) break;
    if (r.degree(s) == 0) return detail::monic(cg);
    MPoly<K> cr = detail::content(r, s);
    f = g;
    g = divexact(r, cr);
  }
  return detail::monic(cg * g);
}

}  // namespace bdl
