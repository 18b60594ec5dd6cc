#pragma once
// Scalar difference-operator identities used by the duality verification:
// the interleaved-factorial operators D^(n)_J1 / D^(m)_J2, their
// falling-factorial product forms, and the difference Wronskian.

#include <string>
#include <vector>

#include "bdl/ore.hpp"

namespace bdl {

namespace detail {

template <class K>
OreS<K> ore_recip_falling(const RatFun<K>& x, int j) {
  // multiplication operator 1 / (x falling j)
  OreS<K> r(OreKind::FwdD);
  r.add_term(0, RatFun<K>(1L) / falling_factorial(x, j));
  return r;
}

template <class K>
OreS<K> ore_d() {
  OreS<K> r(OreKind::FwdD);
  r.add_term(1, RatFun<K>(1L));
  return r;
}

}  // namespace detail

// D^(m)_{J2} for J a subset of {1..n+m}: alternating product of reciprocal
// falling factorials and forward differences, one d per element of J2.
template <class K>
OreS<K> dj_lower(int n, int m, const std::vector<int>& J) {
  RatFun<K> u = RatFun<K>::var(sym_u());
  std::vector<int> j2;
  for (int j : J)
    if (j > n) j2.push_back(j);
  OreS<K> acc = detail::ore_recip_falling<K>(
      u - RatFun<K>(static_cast<long>(n)),
      j2.empty() ? m : j2.front() - n - 1);
  for (std::size_t t = 0; t < j2.size(); ++t) {
    int lo = j2[t];
    int hi = t + 1 < j2.size() ? j2[t + 1] : n + m + 1;  // sentinel: trailing block
    int len = t + 1 < j2.size() ? hi - lo - 1 : n + m - lo;
    acc = ore_mul(acc, detail::ore_d<K>());
    acc = ore_mul(acc,
                  detail::ore_recip_falling<K>(u - RatFun<K>(static_cast<long>(lo)), len));
  }
  return acc;
}

// D^(n)_{J1}: same shape on the first block {1..n}.
template <class K>
OreS<K> dj_upper(int n, int m, const std::vector<int>& J) {
  (void)m;
  RatFun<K> u = RatFun<K>::var(sym_u());
  std::vector<int> j1;
  for (int j : J)
    if (j <= n) j1.push_back(j);
  OreS<K> acc = detail::ore_recip_falling<K>(u, j1.empty() ? n : j1.front() - 1);
  for (std::size_t t = 0; t < j1.size(); ++t) {
    int lo = j1[t];
    int len = t + 1 < j1.size() ? j1[t + 1] - lo - 1 : n - lo;
    acc = ore_mul(acc, detail::ore_d<K>());
    acc = ore_mul(acc,
                  detail::ore_recip_falling<K>(u - RatFun<K>(static_cast<long>(lo)), len));
  }
  return acc;
}

struct DJReport {
  bool lower_ok = false;
  bool upper_ok = false;
  std::string residual;  // description of the failing difference, if any
  bool ok() const { return lower_ok && upper_ok; }
};

// Verifies both interleaved-factorial identities for the subset J:
//   (u-n)^(falling m) D^(m)_{J2} = prod_{j in J2} ((u-n-m+1)d - (n+m-j))
//   (u-m)^(falling n) delta_hat_{n+m} D^(n)_{J1}
//       = (-1)^(n-|J1|) prod_{j in J1} ((u-n-m+1)d - j + 1)
template <class K>
DJReport scalar_DJ_identity(int n, int m, const std::vector<int>& J) {
  DJReport rep;
  RatFun<K> u = RatFun<K>::var(sym_u());
  RatFun<K> base = u - RatFun<K>(static_cast<long>(n + m - 1));  // (u-n-m+1)

  auto x_minus = [&](long c) {
    OreS<K> t(OreKind::FwdD);
    t.add_term(1, base);
    t.add_term(0, RatFun<K>(-c));
    return t;
  };

  {
    OreS<K> lhs = ore_scale(
        dj_lower<K>(n, m, J),
        falling_factorial(u - RatFun<K>(static_cast<long>(n)), m));
    // falling factorial multiplies from the left
    OreS<K> rhs(OreKind::FwdD);
    rhs.add_term(0, RatFun<K>(1L));
    for (int j : J)
      if (j > n) rhs = ore_mul(rhs, x_minus(n + m - j));
    rep.lower_ok = ore_equal(lhs, rhs);
    if (!rep.lower_ok) {
      OreS<K> diff = ore_sub(lhs, rhs);
      rep.residual = "lower residual order " + std::to_string(diff.order());
    }
  }
  {
    OreS<K> inner = to_shift(dj_upper<K>(n, m, J));
    OreS<K> flipped = delta_hat(inner, n + m);
    OreS<K> lhs = ore_scale(to_fwd_difference(flipped),
                            falling_factorial(u - RatFun<K>(static_cast<long>(m)), n));
    int r = 0;
    OreS<K> rhs(OreKind::FwdD);
    rhs.add_term(0, RatFun<K>(1L));
    for (int j : J)
      if (j <= n) {
        rhs = ore_mul(rhs, x_minus(j - 1));
        ++r;
      }
    if ((n - r) % 2 != 0) rhs = ore_scale(rhs, RatFun<K>(-1L));
    rep.upper_ok = ore_equal(lhs, rhs);
    if (!rep.upper_ok) {
      OreS<K> diff = ore_sub(lhs, rhs);
      rep.residual += " upper residual order " + std::to_string(diff.order());
    }
  }
  return rep;
}

// det of the matrix (((u-c)d)^(p-1) . f_s); fraction-free cofactor expansion
// is fine at these sizes.
template <class K>
RatFun<K> difference_wronskian(const std::vector<RatFun<K>>& funcs, const RatFun<K>& c) {
  const std::size_t k = funcs.size();
  RatFun<K> u = RatFun<K>::var(sym_u());
  std::vector<std::vector<RatFun<K>>> w(k, std::vector<RatFun<K>>(k));
  for (std::size_t s = 0; s < k; ++s) {
    RatFun<K> cur = funcs[s];
    for (std::size_t p = 0; p < k; ++p) {
      w[p][s] = cur;
      cur = (u - c) * (shift_u(cur, 1L) - cur);
    }
  }
  Mat<K> m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w[i][j];
  return det(m);
}

}  // namespace bdl
