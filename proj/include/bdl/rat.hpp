#pragma once
// Exact ground scalars: arbitrary-precision rationals (GMP) and a large
// prime field used by the modular falsification probe.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bdl {

using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_one(const Rat& q) { return q == 1; }
inline Rat inverse(const Rat& q) {
  if (is_zero(q)) throw std::domain_error("division by zero rational");
  return Rat(1) / q;
}
inline std::string str(const Rat& q) { return q.get_str(); }

// Z/p for a fixed odd prime p < 2^63.  One modulus per process run: the
// probe picks its prime when the run starts.
struct ModP {
  std::uint64_t v = 0;

  static inline std::uint64_t p = 2305843009213693951ULL;  // 2^61 - 1

  ModP() = default;
  explicit ModP(std::uint64_t x) : v(x % p) {}
  ModP(long x) {
    long long m = static_cast<long long>(p);
    long long r = static_cast<long long>(x) % m;
    if (r < 0) r += m;
    v = static_cast<std::uint64_t>(r);
  }

  friend ModP operator+(ModP a, ModP b) {
    std::uint64_t s = a.v + b.v;
    if (s >= p) s -= p;
    return ModP{s, 0};
  }
  friend ModP operator-(ModP a, ModP b) {
    std::uint64_t s = a.v >= b.v ? a.v - b.v : a.v + p - b.v;
    return ModP{s, 0};
  }
  friend ModP operator*(ModP a, ModP b) {
    unsigned __int128 m = static_cast<unsigned __int128>(a.v) * b.v;
    return ModP{static_cast<std::uint64_t>(m % p), 0};
  }
  friend ModP operator-(ModP a) { return ModP{a.v == 0 ? 0 : p - a.v, 0}; }
  friend bool operator==(ModP a, ModP b) { return a.v == b.v; }
  friend bool operator!=(ModP a, ModP b) { return a.v != b.v; }

  ModP& operator+=(ModP b) { return *this = *this + b; }
  ModP& operator-=(ModP b) { return *this = *this - b; }
  ModP& operator*=(ModP b) { return *this = *this * b; }

 private:
  ModP(std::uint64_t x, int) : v(x) {}
};

inline bool is_zero(const ModP& a) { return a.v == 0; }
inline bool is_one(const ModP& a) { return a.v == 1; }

inline ModP pow(ModP a, std::uint64_t e) {
  ModP r(1L);
  while (e) {
    if (e & 1) r *= a;
    a *= a;
    e >>= 1;
  }
  return r;
}

inline ModP inverse(const ModP& a) {
  if (a.v == 0) throw std::domain_error("division by zero mod p");
  return pow(a, ModP::p - 2);
}

inline std::string str(const ModP& a) { return std::to_string(a.v); }

inline ModP operator/(ModP a, ModP b) { return a * inverse(b); }

// Coercions from Rat, used when mapping sampled rational parameters into a
// probe run.  The sampled heights are tiny, so p never divides a denominator.
template <class K>
K from_rat(const Rat& q);

template <>
inline Rat from_rat<Rat>(const Rat& q) {
  return q;
}

template <>
inline ModP from_rat<ModP>(const Rat& q) {
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  mpz_class pz = mpz_class(std::to_string(ModP::p));
  mpz_class rn = num % pz;
  if (rn < 0) rn += pz;
  mpz_class rd = den % pz;
  if (rd == 0) throw std::domain_error("denominator divisible by probe prime");
  ModP n{static_cast<std::uint64_t>(mpz_get_ui(rn.get_mpz_t()))};
  ModP d{static_cast<std::uint64_t>(mpz_get_ui(rd.get_mpz_t()))};
  return n * inverse(d);
}

}  // namespace bdl
