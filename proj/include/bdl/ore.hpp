#pragma once
// Difference and differential operator algebras in u with coefficients that
// are rational functions or matrices of them.  Normal form keeps
// coefficients on the left of the generator powers.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bdl/linalg.hpp"

namespace bdl {

enum class OreKind {
  Tau,   // shift: tau f(u) = f(u+1) tau
  FwdD,  // d = tau - 1
  Del,   // d/du
  Euler  // u d/du
};

// ---- coefficient trait overloads: scalar flavour ----
template <class K>
bool cis_zero(const RatFun<K>& c) {
  return c.is_zero();
}
template <class K>
RatFun<K> cadd(const RatFun<K>& a, const RatFun<K>& b) {
  return a + b;
}
template <class K>
RatFun<K> cmul(const RatFun<K>& a, const RatFun<K>& b) {
  return a * b;
}
template <class K>
RatFun<K> cneg(const RatFun<K>& a) {
  return -a;
}
template <class K>
RatFun<K> cscale(const RatFun<K>& a, const RatFun<K>& s) {
  return a * s;
}
template <class K>
RatFun<K> cshift(const RatFun<K>& a, const RatFun<K>& s) {
  return shift_u(a, s);
}
template <class K>
RatFun<K> cderiv(const RatFun<K>& a) {
  return a.derivative(sym_u());
}
template <class K>
RatFun<K> csubst(const RatFun<K>& a, const std::map<Sym, RatFun<K>>& bind) {
  return substitute(a, bind);
}
template <class K>
bool cequal(const RatFun<K>& a, const RatFun<K>& b) {
  return a == b;
}

// ---- coefficient trait overloads: matrix flavour ----
template <class K>
bool cis_zero(const Mat<K>& c) {
  return is_zero(c);
}
template <class K>
Mat<K> cadd(const Mat<K>& a, const Mat<K>& b) {
  return a + b;
}
template <class K>
Mat<K> cmul(const Mat<K>& a, const Mat<K>& b) {
  return (a * b).eval();
}
template <class K>
Mat<K> cneg(const Mat<K>& a) {
  return (-a).eval();
}
template <class K>
Mat<K> cscale(const Mat<K>& a, const RatFun<K>& s) {
  return map_entries(a, [&](const RatFun<K>& x) { return x * s; });
}
template <class K>
Mat<K> cshift(const Mat<K>& a, const RatFun<K>& s) {
  return shift_u(a, s);
}
template <class K>
Mat<K> cderiv(const Mat<K>& a) {
  return deriv_u(a);
}
template <class K>
Mat<K> csubst(const Mat<K>& a, const std::map<Sym, RatFun<K>>& bind) {
  return substitute(a, bind);
}
template <class K>
bool cequal(const Mat<K>& a, const Mat<K>& b) {
  return equal(a, b);
}

template <class K>
RatFun<K> rising_factorial(const RatFun<K>& x, int j) {
  RatFun<K> r(1L);
  for (int t = 0; t < j; ++t) r *= x + RatFun<K>(static_cast<long>(t));
  return r;
}

template <class K>
RatFun<K> falling_factorial(const RatFun<K>& x, int j) {
  RatFun<K> r(1L);
  for (int t = 0; t < j; ++t) r *= x - RatFun<K>(static_cast<long>(t));
  return r;
}

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Stirling numbers: S2(n,k) second kind; s1(n,k) signed first kind, so that
// x^n = sum_k S2(n,k) x^(falling k)   and   x^(falling n) = sum_k s1(n,k) x^k.
inline long long stirling2(int n, int k) {
  static std::vector<std::vector<long long>> tab{{1}};
  while (static_cast<int>(tab.size()) <= n) {
    int m = static_cast<int>(tab.size());
    std::vector<long long> row(static_cast<std::size_t>(m) + 1, 0);
    for (int j = 1; j <= m; ++j)
      row[static_cast<std::size_t>(j)] =
          (j < m ? tab[m - 1][static_cast<std::size_t>(j)] * j : 0) +
          tab[m - 1][static_cast<std::size_t>(j) - 1];
    tab.push_back(row);
  }
  if (k < 0 || k > n) return 0;
  return tab[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

inline long long stirling1(int n, int k) {
  static std::vector<std::vector<long long>> tab{{1}};
  while (static_cast<int>(tab.size()) <= n) {
    int m = static_cast<int>(tab.size());
    std::vector<long long> row(static_cast<std::size_t>(m) + 1, 0);
    for (int j = 0; j <= m; ++j) {
      long long a = j < m ? tab[m - 1][static_cast<std::size_t>(j)] : 0;
      long long b = j >= 1 ? tab[m - 1][static_cast<std::size_t>(j) - 1] : 0;
      row[static_cast<std::size_t>(j)] = b - (m - 1) * a;
    }
    tab.push_back(row);
  }
  if (k < 0 || k > n) return 0;
  return tab[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

template <class K, class C>
struct Ore {
  OreKind kind = OreKind::Tau;
  std::map<int, C> t;  // generator power -> coefficient

  Ore() = default;
  explicit Ore(OreKind k) : kind(k) {}

  bool is_zero() const { return t.empty(); }
  int order() const { return t.empty() ? -1 : t.rbegin()->first; }

  void add_term(int p, const C& c) {
    if (cis_zero(c)) return;
    auto it = t.find(p);
    if (it == t.end()) {
      t.emplace(p, c);
    } else {
      it->second = cadd(it->second, c);
      if (cis_zero(it->second)) t.erase(it);
    }
  }

  static Ore coeff(OreKind k, const C& c) {
    Ore o(k);
    o.add_term(0, c);
    return o;
  }
  static Ore gen(OreKind k, const C& one) {
    Ore o(k);
    o.add_term(1, one);
    return o;
  }
};

template <class K>
using OreS = Ore<K, RatFun<K>>;  // scalar coefficients
template <class K>
using OreM = Ore<K, Mat<K>>;  // matrix coefficients

// move one generator leftward past a coefficient: g c = sum_k out[k] g^k
template <class K, class C>
std::vector<std::pair<int, C>> move_one(OreKind kind, const C& c) {
  switch (kind) {
    case OreKind::Tau:
      return {{1, cshift(c, RatFun<K>(1L))}};
    case OreKind::FwdD: {
      C sh = cshift(c, RatFun<K>(1L));
      return {{1, sh}, {0, cadd(sh, cneg(c))}};
    }
    case OreKind::Del:
      return {{1, c}, {0, cderiv(c)}};
    case OreKind::Euler:
      return {{1, c}, {0, cscale(cderiv(c), RatFun<K>::var(sym_u()))}};
  }
  throw std::logic_error("move_one: bad kind");
}

template <class K, class C>
Ore<K, C> ore_mul(const Ore<K, C>& x, const Ore<K, C>& y) {
  if (x.kind != y.kind) throw std::invalid_argument("ore_mul: kind mismatch");
  Ore<K, C> r(x.kind);
  for (auto& [q, cy] : y.t) {
    for (auto& [p, cx] : x.t) {
      // g^p cy = sum_k moved[k] g^k
      std::map<int, C> moved;
      moved.emplace(0, cy);
      for (int step = 0; step < p; ++step) {
        std::map<int, C> next;
        for (auto& [k, ck] : moved) {
          for (auto& [dj, cj] : move_one<K, C>(x.kind, ck)) {
            auto it = next.find(k + dj);
            if (it == next.end()) next.emplace(k + dj, cj);
            else it->second = cadd(it->second, cj);
          }
        }
        moved.swap(next);
      }
      for (auto& [k, ck] : moved) r.add_term(k + q, cmul(cx, ck));
    }
  }
  return r;
}

template <class K, class C>
Ore<K, C> ore_add(const Ore<K, C>& x, const Ore<K, C>& y) {
  if (x.kind != y.kind) throw std::invalid_argument("ore_add: kind mismatch");
  Ore<K, C> r = x;
  for (auto& [p, c] : y.t) r.add_term(p, c);
  return r;
}

template <class K, class C>
Ore<K, C> ore_sub(const Ore<K, C>& x, const Ore<K, C>& y) {
  if (x.kind != y.kind) throw std::invalid_argument("ore_sub: kind mismatch");
  Ore<K, C> r = x;
  for (auto& [p, c] : y.t) r.add_term(p, cneg(c));
  return r;
}

template <class K, class C>
Ore<K, C> ore_scale(const Ore<K, C>& x, const RatFun<K>& f) {
  Ore<K, C> r(x.kind);
  for (auto& [p, c] : x.t) r.add_term(p, cscale(c, f));
  return r;
}

template <class K, class C>
bool ore_equal(const Ore<K, C>& x, const Ore<K, C>& y) {
  if (x.kind != y.kind) return false;
  if (x.t.size() != y.t.size()) return false;
  auto ix = x.t.begin();
  auto iy = y.t.begin();
  for (; ix != x.t.end(); ++ix, ++iy) {
    if (ix->first != iy->first) return false;
    if (!cequal(ix->second, iy->second)) return false;
  }
  return true;
}

// coefficient substitution u -> u + s; realizes tau^s (.) tau^{-s} on normal
// forms of shift/difference operators
template <class K, class C>
Ore<K, C> ore_conjugate_shift(const Ore<K, C>& x, const RatFun<K>& s) {
  Ore<K, C> r(x.kind);
  for (auto& [p, c] : x.t) r.add_term(p, cshift(c, s));
  return r;
}

// tau <-> d conversions (exact binomial rewrites)
template <class K, class C>
Ore<K, C> to_fwd_difference(const Ore<K, C>& x) {
  if (x.kind == OreKind::FwdD) return x;
  if (x.kind != OreKind::Tau) throw std::invalid_argument("to_fwd_difference: need tau kind");
  Ore<K, C> r(OreKind::FwdD);
  for (auto& [p, c] : x.t)
    for (int j = 0; j <= p; ++j)
      r.add_term(j, cscale(c, RatFun<K>(static_cast<long>(binom(p, j)))));
  return r;
}

template <class K, class C>
Ore<K, C> to_shift(const Ore<K, C>& x) {
  if (x.kind == OreKind::Tau) return x;
  if (x.kind != OreKind::FwdD) throw std::invalid_argument("to_shift: need d kind");
  Ore<K, C> r(OreKind::Tau);
  for (auto& [p, c] : x.t)
    for (int j = 0; j <= p; ++j) {
      long long sgn = ((p - j) % 2 == 0) ? 1 : -1;
      r.add_term(j, cscale(c, RatFun<K>(static_cast<long>(sgn * binom(p, j)))));
    }
  return r;
}

// Euler <-> plain derivative
template <class K, class C>
Ore<K, C> to_derivative(const Ore<K, C>& x) {
  if (x.kind == OreKind::Del) return x;
  if (x.kind != OreKind::Euler) throw std::invalid_argument("to_derivative: need Euler kind");
  Ore<K, C> r(OreKind::Del);
  RatFun<K> u = RatFun<K>::var(sym_u());
  for (auto& [p, c] : x.t)
    for (int j = 0; j <= p; ++j) {
      long long s2 = stirling2(p, j);
      if (s2 == 0) continue;
      r.add_term(j, cscale(c, u.pow(j) * RatFun<K>(static_cast<long>(s2))));
    }
  return r;
}

template <class K, class C>
Ore<K, C> to_euler(const Ore<K, C>& x) {
  if (x.kind == OreKind::Euler) return x;
  if (x.kind != OreKind::Del) throw std::invalid_argument("to_euler: need derivative kind");
  Ore<K, C> r(OreKind::Euler);
  RatFun<K> u = RatFun<K>::var(sym_u());
  for (auto& [p, c] : x.t) {
    RatFun<K> upinv = RatFun<K>(1L) / u.pow(p);
    for (int j = 0; j <= p; ++j) {
      long long s1 = stirling1(p, j);
      if (s1 == 0) continue;
      r.add_term(j, cscale(c, upinv * RatFun<K>(static_cast<long>(s1))));
    }
  }
  return r;
}

// action on a rational function (scalar operators)
template <class K>
RatFun<K> ore_apply(const OreS<K>& x, const RatFun<K>& f) {
  RatFun<K> acc;
  switch (x.kind) {
    case OreKind::Tau:
      for (auto& [p, c] : x.t) acc += c * shift_u(f, static_cast<long>(p));
      return acc;
    case OreKind::FwdD: {
      std::vector<RatFun<K>> it{f};
      int top = x.order();
      for (int k = 1; k <= top; ++k)
        it.push_back(shift_u(it.back(), 1L) - it.back());
      for (auto& [p, c] : x.t) acc += c * it[static_cast<std::size_t>(p)];
      return acc;
    }
    case OreKind::Del: {
      std::vector<RatFun<K>> it{f};
      int top = x.order();
      for (int k = 1; k <= top; ++k) it.push_back(it.back().derivative(sym_u()));
      for (auto& [p, c] : x.t) acc += c * it[static_cast<std::size_t>(p)];
      return acc;
    }
    case OreKind::Euler: {
      RatFun<K> u = RatFun<K>::var(sym_u());
      std::vector<RatFun<K>> it{f};
      int top = x.order();
      for (int k = 1; k <= top; ++k) it.push_back(u * it.back().derivative(sym_u()));
      for (auto& [p, c] : x.t) acc += c * it[static_cast<std::size_t>(p)];
      return acc;
    }
  }
  throw std::logic_error("ore_apply: bad kind");
}

// delta-hat: sum b_i(u) tau^i -> sum tau^i b_i(-u+l-1), renormalized to
// coefficients-on-the-left
template <class K, class C>
Ore<K, C> delta_hat(const Ore<K, C>& x, long l) {
  if (x.kind != OreKind::Tau) throw std::invalid_argument("delta_hat: need tau kind");
  Ore<K, C> r(OreKind::Tau);
  for (auto& [p, c] : x.t) {
    std::map<Sym, RatFun<K>> bind{
        {sym_u(), RatFun<K>(l - 1 - p) - RatFun<K>::var(sym_u())}};
    r.add_term(p, csubst(c, bind));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Constant-grid presentations ("pencils") in mixed bases.
//
//   u part:  (u+alpha)^i               (UPow)
//            (u+alpha) falling i       (UFalling)
//   X part:  X^j                       (XPow)
//            X(X-1)...(X-j+1)          (XFallingProd)
// with X = (u+beta)d on difference operators, X = u d/du on Euler operators,
// and X = tau on shift operators (XPow only).
// ---------------------------------------------------------------------------

enum class UBasis { Pow, Falling };
enum class XBasis { Pow, FallingProd };

template <class K, class C>
struct Pencil {
  OreKind kind = OreKind::FwdD;
  RatFun<K> alpha;
  RatFun<K> beta;  // ignored for Euler / Tau
  UBasis ubasis = UBasis::Pow;
  XBasis xbasis = XBasis::Pow;
  std::map<std::pair<int, int>, C> grid;  // (i = u index, j = X index)

  void add(int i, int j, const C& c) {
    if (cis_zero(c)) return;
    auto key = std::make_pair(i, j);
    auto it = grid.find(key);
    if (it == grid.end()) {
      grid.emplace(key, c);
    } else {
      it->second = cadd(it->second, c);
      if (cis_zero(it->second)) grid.erase(it);
    }
  }
  int max_i() const {
    int m = -1;
    for (auto& [k, c] : grid) m = std::max(m, k.first);
    return m;
  }
  int max_j() const {
    int m = -1;
    for (auto& [k, c] : grid) m = std::max(m, k.second);
    return m;
  }
};

template <class K, class C>
struct PencilResult {
  std::optional<Pencil<K, C>> pencil;
  std::string witness;  // set on membership failure
  bool ok() const { return pencil.has_value(); }
};

namespace detail {

// expand a u-polynomial into the chosen u-basis around alpha
template <class K>
std::vector<RatFun<K>> u_basis_coeffs(const RatFun<K>& poly, const RatFun<K>& alpha,
                                      UBasis ub) {
  // synthetic division by (u+alpha), then (u+alpha-1), ... for Falling
  std::vector<RatFun<K>> out;
  RatFun<K> u = RatFun<K>::var(sym_u());
  RatFun<K> cur = poly;
  int k = 0;
  while (!cur.is_zero()) {
    RatFun<K> root = -alpha;  // u + alpha - k has root u = k - alpha... shifted below
    if (ub == UBasis::Falling) root = RatFun<K>(static_cast<long>(k)) - alpha;
    // cur = q*(u - root) + rem
    std::map<Sym, RatFun<K>> at{{sym_u(), root}};
    RatFun<K> rem = substitute(cur, at);
    out.push_back(rem);
    cur = (cur - rem) / (u - root);
    ++k;
    if (k > 512) throw std::logic_error("u_basis_coeffs: runaway expansion");
  }
  return out;
}

}  // namespace detail

// Decide membership of `x` in the span of the mixed basis and extract the
// grid; fails with a witness when a coefficient stays u-dependent or a
// denominator survives.  `target` selects the X part: Tau for u^i tau^j
// grids, FwdD for (u+beta)d grids, Euler for u d/du grids.
template <class K, class C>
PencilResult<K, C> to_pencil(const Ore<K, C>& x, OreKind target,
                             const RatFun<K>& alpha, const RatFun<K>& beta,
                             UBasis ub = UBasis::Pow, XBasis xb = XBasis::Pow) {
  PencilResult<K, C> res;
  Ore<K, C> nf(x.kind);
  switch (target) {
    case OreKind::Tau: nf = to_shift(x); break;
    case OreKind::FwdD: nf = to_fwd_difference(x); break;
    case OreKind::Euler: nf = to_derivative(x); break;
    default: throw std::invalid_argument("to_pencil: bad target");
  }

  Pencil<K, C> p;
  p.kind = target;
  p.alpha = alpha;
  p.beta = beta;
  p.ubasis = ub;
  p.xbasis = target == OreKind::Tau ? XBasis::Pow : xb;

  // q_s = coeff of generator^s divided by the falling-product normalizer
  // ((u+beta) rising s for the difference grid, u^s for the Euler grid)
  RatFun<K> xshift = RatFun<K>::var(sym_u()) + (target == OreKind::FwdD ? beta : RatFun<K>());
  std::map<int, C> q;
  for (auto& [s, c] : nf.t) {
    if (target == OreKind::Tau) {
      q.emplace(s, c);
      continue;
    }
    RatFun<K> norm = target == OreKind::FwdD ? rising_factorial(xshift, s) : xshift.pow(s);
    q.emplace(s, cscale(c, RatFun<K>(1L) / norm));
  }

  // convert falling products to plain powers of X when requested
  std::map<int, C> g;
  if (target == OreKind::Tau || xb == XBasis::FallingProd) {
    g = std::move(q);
  } else {
    for (auto& [s, c] : q)
      for (int j = 0; j <= s; ++j) {
        long long s1 = stirling1(s, j);
        if (s1 == 0) continue;
        auto it = g.find(j);
        C add = cscale(c, RatFun<K>(static_cast<long>(s1)));
        if (it == g.end()) g.emplace(j, add);
        else it->second = cadd(it->second, add);
      }
  }

  for (auto& [j, c] : g) {
    if (cis_zero(c)) continue;
    // every entry must be a polynomial in u for membership
    bool poly_ok = true;
    if constexpr (std::is_same_v<C, RatFun<K>>) {
      poly_ok = c.den.degree(sym_u()) == 0;
    } else {
      for (Eigen::Index r = 0; r < c.rows() && poly_ok; ++r)
        for (Eigen::Index cc = 0; cc < c.cols() && poly_ok; ++cc)
          poly_ok = c(r, cc).den.degree(sym_u()) == 0;
    }
    if (!poly_ok) {
      res.witness = "non-polynomial coefficient at X power " + std::to_string(j);
      return res;
    }
    // split the u dependence into the chosen u-basis
    // (work entrywise through RatFun coefficient lists)
    if constexpr (std::is_same_v<C, RatFun<K>>) {
      auto coeffs = detail::u_basis_coeffs(c, alpha, ub);
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        p.add(static_cast<int>(i), j, coeffs[i]);
    } else {
      for (Eigen::Index r = 0; r < c.rows(); ++r)
        for (Eigen::Index cc = 0; cc < c.cols(); ++cc) {
          auto coeffs = detail::u_basis_coeffs(c(r, cc), alpha, ub);
          for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i].is_zero()) continue;
            auto key = std::make_pair(static_cast<int>(i), j);
            auto it = p.grid.find(key);
            if (it == p.grid.end()) {
              Mat<K> m = zeros<K>(c.rows(), c.cols());
              m(r, cc) = coeffs[i];
              p.grid.emplace(key, std::move(m));
            } else {
              it->second(r, cc) = it->second(r, cc) + coeffs[i];
            }
          }
        }
    }
  }
  for (auto it = p.grid.begin(); it != p.grid.end();) {
    if (cis_zero(it->second)) it = p.grid.erase(it);
    else ++it;
  }
  res.pencil = std::move(p);
  return res;
}

template <class K, class C>
Ore<K, C> from_pencil(const Pencil<K, C>& p) {
  OreKind store = p.kind == OreKind::Tau ? OreKind::Tau
                  : p.kind == OreKind::Euler ? OreKind::Del
                                             : OreKind::FwdD;
  Ore<K, C> r(store);
  RatFun<K> u = RatFun<K>::var(sym_u());
  RatFun<K> xshift = p.kind == OreKind::Euler ? u : u + p.beta;
  auto normalizer = [&](int s) {
    return p.kind == OreKind::Euler ? xshift.pow(s) : rising_factorial(xshift, s);
  };
  for (auto& [key, c] : p.grid) {
    auto [i, j] = key;
    RatFun<K> upart(1L);
    for (int t = 0; t < i; ++t)
      upart *= (p.ubasis == UBasis::Pow) ? (u + p.alpha)
                                         : (u + p.alpha - RatFun<K>(static_cast<long>(t)));
    if (p.kind == OreKind::Tau) {
      r.add_term(j, cscale(c, upart));
      continue;
    }
    // X^j resp. falling product, written out in generator powers
    std::vector<std::pair<int, RatFun<K>>> xterms;
    if (p.xbasis == XBasis::FallingProd) {
      xterms.emplace_back(j, normalizer(j));
    } else {
      for (int s = 0; s <= j; ++s) {
        long long s2 = stirling2(j, s);
        if (s2 == 0) continue;
        xterms.emplace_back(s, normalizer(s) * RatFun<K>(static_cast<long>(s2)));
      }
    }
    for (auto& [s, f] : xterms) r.add_term(s, cscale(c, upart * f));
  }
  if (p.kind == OreKind::Euler) return to_euler(r);
  return r;
}

// The transpose anti-isomorphism between the two mixed-basis presentations:
// grids swap indices, the basis parameters swap their roles for (n, m).
template <class K, class C>
Pencil<K, C> apply_F(const Pencil<K, C>& p, int n, int m) {
  RatFun<K> em(static_cast<long>(m)), en(static_cast<long>(n));
  if (p.kind != OreKind::FwdD || p.ubasis != UBasis::Pow || p.xbasis != XBasis::Pow ||
      p.alpha != em || p.beta != RatFun<K>(static_cast<long>(1 - n)))
    throw std::invalid_argument("apply_F: basis mismatch");
  Pencil<K, C> q;
  q.kind = OreKind::FwdD;
  q.alpha = en;
  q.beta = RatFun<K>(static_cast<long>(1 - m));
  q.ubasis = UBasis::Pow;
  q.xbasis = XBasis::Pow;
  for (auto& [key, c] : p.grid) q.grid.emplace(std::make_pair(key.second, key.first), c);
  return q;
}

template <class K, class C>
bool pencil_equal(const Pencil<K, C>& a, const Pencil<K, C>& b) {
  if (a.grid.size() != b.grid.size()) return false;
  auto ia = a.grid.begin();
  auto ib = b.grid.begin();
  for (; ia != a.grid.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!cequal(ia->second, ib->second)) return false;
  }
  return true;
}

}  // namespace bdl
