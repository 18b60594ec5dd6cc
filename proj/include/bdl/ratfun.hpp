#pragma once
// Rational functions num/den over MPoly<K>, kept in lowest terms with a
// monic denominator so equality is structural.

#include <map>
#include <stdexcept>
#include <string>

#include "bdl/mpoly.hpp"

namespace bdl {

template <class K>
struct RatFun {
  MPoly<K> num;
  MPoly<K> den = MPoly<K>::from_int(1);

  RatFun() = default;
  RatFun(long n) : num(MPoly<K>::from_int(n)) {}
  explicit RatFun(const K& c) : num(MPoly<K>::constant(c)) {}
  explicit RatFun(const MPoly<K>& p) : num(p) {}
  RatFun(const MPoly<K>& n, const MPoly<K>& d) : num(n), den(d) { reduce(); }

  static RatFun var(Sym s) { return RatFun(MPoly<K>::var(s)); }

  bool is_zero() const { return num.is_zero(); }
  bool is_one() const { return den == MPoly<K>::from_int(1) && num == den; }
  bool is_constant() const { return num.is_constant() && den.is_constant(); }
  bool is_polynomial() const { return den == MPoly<K>::from_int(1); }
  K constant_value() const {
    return num.constant_value() * inverse(den.constant_value());
  }

  void reduce() {
    if (den.is_zero()) throw std::domain_error("RatFun: zero denominator");
    if (num.is_zero()) {
      den = MPoly<K>::from_int(1);
      return;
    }
    if (!den.is_constant()) {
      MPoly<K> g = gcd(num, den);
      if (!g.is_constant()) {
        num = divexact(num, g);
        den = divexact(den, g);
      }
    }
    K lc = inverse(den.lead_coeff());
    num = num * lc;
    den = den * lc;
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    RatFun r;
    r.num = a.num * b.den + b.num * a.den;
    r.den = a.den * b.den;
    r.reduce();
    return r;
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    RatFun r;
    r.num = a.num * b.den - b.num * a.den;
    r.den = a.den * b.den;
    r.reduce();
    return r;
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    RatFun r;
    r.num = a.num * b.num;
    r.den = a.den * b.den;
    r.reduce();
    return r;
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
    RatFun r;
    r.num = a.num * b.den;
    r.den = a.den * b.num;
    r.reduce();
    return r;
  }
  friend RatFun operator-(const RatFun& a) {
    RatFun r;
    r.num = -a.num;
    r.den = a.den;
    return r;
  }
  RatFun& operator+=(const RatFun& b) { return *this = *this + b; }
  RatFun& operator-=(const RatFun& b) { return *this = *this - b; }
  RatFun& operator*=(const RatFun& b) { return *this = *this * b; }
  RatFun& operator/=(const RatFun& b) { return *this = *this / b; }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  RatFun pow(int e) const {
    if (e < 0) return RatFun(1L) / pow(-e);
    RatFun r(1L), b = *this;
    while (e) {
      if (e & 1) r *= b;
      if (e >>= 1) b *= b;
    }
    return r;
  }

  RatFun derivative(Sym s) const {
    RatFun r;
    r.num = num.derivative(s) * den - num * den.derivative(s);
    r.den = den * den;
    r.reduce();
    return r;
  }

  std::string to_string() const {
    if (is_polynomial()) return num.to_string();
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
  }
};

// substitution of symbols by rational functions; symbols not bound stay put
template <class K>
RatFun<K> substitute(const MPoly<K>& p, const std::map<Sym, RatFun<K>>& bind) {
  RatFun<K> acc;
  for (auto& [m, c] : p.t) {
    RatFun<K> term{c};
    for (auto& [s, e] : m) {
      auto it = bind.find(s);
      RatFun<K> base = it != bind.end() ? it->second : RatFun<K>::var(s);
      term *= base.pow(e);
    }
    acc += term;
  }
  return acc;
}

template <class K>
RatFun<K> substitute(const RatFun<K>& f, const std::map<Sym, RatFun<K>>& bind) {
  RatFun<K> d = substitute(f.den, bind);
  if (d.is_zero()) throw std::domain_error("substitute: denominator vanishes identically");
  return substitute(f.num, bind) / d;
}

template <class K>
RatFun<K> shift_u(const RatFun<K>& f, const RatFun<K>& s) {
  if (s.is_zero()) return f;
  std::map<Sym, RatFun<K>> bind{{sym_u(), RatFun<K>::var(sym_u()) + s}};
  return substitute(f, bind);
}

template <class K>
RatFun<K> shift_u(const RatFun<K>& f, long s) {
  return shift_u(f, RatFun<K>(s));
}

// multiplicity of the linear factor (u - c) in a polynomial
template <class K>
int vanishing_order_u(const MPoly<K>& p, const RatFun<K>& c) {
  if (p.is_zero()) throw std::domain_error("vanishing order of zero polynomial");
  MPoly<K> lin = (RatFun<K>::var(sym_u()) - c).num;  // u - c cleared
  int ord = 0;
  MPoly<K> q = p;
  while (true) {
    auto d = try_divide(q, lin);
    if (!d) return ord;
    q = *d;
    ++ord;
  }
}

// exact residue of f at u = c; pole order read off the denominator
template <class K>
RatFun<K> residue_u(const RatFun<K>& f, const RatFun<K>& c) {
  if (f.is_zero()) return RatFun<K>();
  int p = vanishing_order_u(f.den, c);
  if (p == 0) return RatFun<K>();
  RatFun<K> lin = RatFun<K>::var(sym_u()) - c;
  RatFun<K> g = f * lin.pow(p);
  K fact(1L);
  for (int k = 2; k < p; ++k) fact *= K(static_cast<long>(k));
  for (int k = 0; k + 1 < p; ++k) g = g.derivative(sym_u());
  std::map<Sym, RatFun<K>> at{{sym_u(), c}};
  return substitute(g, at) / RatFun<K>(fact);
}

}  // namespace bdl
