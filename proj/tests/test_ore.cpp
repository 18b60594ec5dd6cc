#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bdl/ore_identities.hpp"

using namespace bdl;

namespace {

using RF = RatFun<Rat>;
using Op = OreS<Rat>;

RF u() { return RF::var(sym_u()); }

Op gen(OreKind k) { return Op::gen(k, RF(1L)); }
Op coeff(OreKind k, const RF& c) { return Op::coeff(k, c); }

struct Lcg {
  std::uint64_t s = 0xdeadbeefcafef00dULL;
  long next(long lo, long hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((s >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

Op random_op(Lcg& g, OreKind k, int max_ord = 2) {
  Op x(k);
  for (int p = 0; p <= max_ord; ++p) {
    RF c;
    for (int t = 0; t < 2; ++t) c += RF(rat(g.next(-3, 3))) * u().pow(g.next(0, 2));
    x.add_term(p, c);
  }
  return x;
}

// pencil basis monomial (u+alpha)^i ((u+beta)d)^j as an operator
Op pencil_monomial(int i, long alpha, int j, long beta) {
  Op x(OreKind::FwdD);
  x.add_term(0, (u() + RF(alpha)).pow(i));
  Op xd(OreKind::FwdD);
  xd.add_term(1, u() + RF(beta));
  for (int t = 0; t < j; ++t) x = ore_mul(x, xd);
  return x;
}

}  // namespace

TEST_CASE("defining relations of the four kinds") {
  // tau u = (u+1) tau
  Op t = ore_mul(gen(OreKind::Tau), coeff(OreKind::Tau, u()));
  CHECK(t.t.at(1) == u() + RF(1L));
  CHECK(t.t.size() == 1);

  // d u = u d + d + 1
  Op d = ore_mul(gen(OreKind::FwdD), coeff(OreKind::FwdD, u()));
  CHECK(d.t.at(1) == u() + RF(1L));
  CHECK(d.t.at(0) == RF(1L));

  // (u ddu) u = u (u ddu) + u
  Op e = ore_mul(gen(OreKind::Euler), coeff(OreKind::Euler, u()));
  CHECK(e.t.at(1) == u());
  CHECK(e.t.at(0) == u());
}

TEST_CASE("d u agrees with action on test polynomials") {
  Op du = ore_mul(gen(OreKind::FwdD), coeff(OreKind::FwdD, u()));
  Op rhs(OreKind::FwdD);  // u d + d + 1
  rhs.add_term(1, u() + RF(1L));
  rhs.add_term(0, RF(1L));
  for (int k = 0; k <= 2; ++k) {
    RF f = u().pow(k);
    CHECK(ore_apply(du, f) == ore_apply(rhs, f));
  }
}

TEST_CASE("actions") {
  Op t = gen(OreKind::Tau);
  CHECK(ore_apply(t, u() * u()) == (u() + RF(1L)) * (u() + RF(1L)));

  Op del = gen(OreKind::Del);
  CHECK(ore_apply(del, u().pow(3)) == RF(3L) * u() * u());

  // (u-c)d annihilates the empty rising factorial (j = n+m)
  long c = 3;  // n = m = 2
  Op xd(OreKind::FwdD);
  xd.add_term(1, u() - RF(c));
  CHECK(ore_apply(xd, RF(1L)).is_zero());
  // and kills each rising-factorial seed up to a shift-eigenvalue
  RF f = rising_factorial(u() - RF(3L), 1);  // j = 3 of n+m = 4
  CHECK(ore_apply(xd, f) == u() - RF(3L));   // X f = 1 * f-shifted difference
}

TEST_CASE("associativity and composed action") {
  Lcg g;
  for (OreKind k : {OreKind::Tau, OreKind::FwdD, OreKind::Del, OreKind::Euler}) {
    Op a = random_op(g, k), b = random_op(g, k), c = random_op(g, k);
    CHECK(ore_equal(ore_mul(ore_mul(a, b), c), ore_mul(a, ore_mul(b, c))));
    RF f = u().pow(2) + RF(rat(1, 2)) * u();
    CHECK(ore_apply(ore_mul(a, b), f) == ore_apply(a, ore_apply(b, f)));
  }
}

TEST_CASE("shift and difference forms convert back and forth") {
  Lcg g;
  Op a = random_op(g, OreKind::Tau);
  CHECK(ore_equal(to_shift(to_fwd_difference(a)), a));
  Op b = random_op(g, OreKind::Del);
  CHECK(ore_equal(to_derivative(to_euler(b)), b));
}

TEST_CASE("pencil extraction: stated examples") {
  long n = 2, m = 3;
  {
    // (u-m+1)d with alpha=n, beta=-m+1 -> {(0,1): 1}
    Op x(OreKind::FwdD);
    x.add_term(1, u() + RF(1 - m));
    auto r = to_pencil(x, OreKind::FwdD, RF(n), RF(1 - m));
    REQUIRE(r.ok());
    CHECK(r.pencil->grid.size() == 1);
    CHECK(r.pencil->grid.at({0, 1}) == RF(1L));
  }
  {
    // (u-c)(u-c+1)d^2 with beta=-c -> ((u-c)d)^2 - ((u-c)d)
    Sym cs = sym_aux("c");
    RF c = RF::var(cs);
    Op x(OreKind::FwdD);
    x.add_term(2, (u() - c) * (u() - c + RF(1L)));
    auto r = to_pencil(x, OreKind::FwdD, RF(0L), -c);
    REQUIRE(r.ok());
    CHECK(r.pencil->grid.size() == 2);
    CHECK(r.pencil->grid.at({0, 2}) == RF(1L));
    CHECK(r.pencil->grid.at({0, 1}) == RF(-1L));
  }
  {
    // u+n with alpha=n -> {(1,0): 1}
    Op x(OreKind::FwdD);
    x.add_term(0, u() + RF(n));
    auto r = to_pencil(x, OreKind::FwdD, RF(n), RF(1 - m));
    REQUIRE(r.ok());
    CHECK(r.pencil->grid.size() == 1);
    CHECK(r.pencil->grid.at({1, 0}) == RF(1L));
  }
}

TEST_CASE("membership failure reports a witness") {
  Op x(OreKind::FwdD);
  x.add_term(0, RF(1L) / u());
  auto r = to_pencil(x, OreKind::FwdD, RF(0L), RF(0L));
  CHECK(!r.ok());
  CHECK(!r.witness.empty());
}

TEST_CASE("pencil round trip on random grids") {
  Lcg g;
  long n = 2, m = 2;
  for (int trial = 0; trial < 20; ++trial) {
    Pencil<Rat, RF> p;
    p.kind = OreKind::FwdD;
    p.alpha = RF(m);
    p.beta = RF(1 - n);
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) p.add(i, j, RF(rat(g.next(-3, 3))));
    Op x = from_pencil(p);
    auto r = to_pencil(x, OreKind::FwdD, p.alpha, p.beta);
    REQUIRE(r.ok());
    CHECK(pencil_equal(*r.pencil, p));
  }
}

TEST_CASE("transpose map on stated generators") {
  int n = 2, m = 3;
  Pencil<Rat, RF> p;
  p.kind = OreKind::FwdD;
  p.alpha = RF(static_cast<long>(m));
  p.beta = RF(static_cast<long>(1 - n));
  p.add(0, 1, RF(1L));  // (u-n+1)d
  auto q = apply_F(p, n, m);
  CHECK(q.grid.size() == 1);
  CHECK(q.grid.at({1, 0}) == RF(1L));  // u+n

  Pencil<Rat, RF> p2;
  p2.kind = OreKind::FwdD;
  p2.alpha = RF(static_cast<long>(m));
  p2.beta = RF(static_cast<long>(1 - n));
  p2.add(1, 0, RF(1L));  // u+m
  auto q2 = apply_F(p2, n, m);
  CHECK(q2.grid.at({0, 1}) == RF(1L));  // (u-m+1)d
}

TEST_CASE("transpose map is an involution across swapped roles") {
  Lcg g;
  int n = 3, m = 2;
  for (int trial = 0; trial < 20; ++trial) {
    Pencil<Rat, RF> p;
    p.kind = OreKind::FwdD;
    p.alpha = RF(static_cast<long>(m));
    p.beta = RF(static_cast<long>(1 - n));
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) p.add(i, j, RF(rat(g.next(-4, 4))));
    auto back = apply_F(apply_F(p, n, m), m, n);
    CHECK(pencil_equal(back, p));
  }
}

TEST_CASE("transpose map is an anti-homomorphism on pencil monomials") {
  Lcg g;
  int n = 2, m = 2;
  for (int trial = 0; trial < 25; ++trial) {
    int i = static_cast<int>(g.next(0, 2)), j = static_cast<int>(g.next(0, 2));
    int k = static_cast<int>(g.next(0, 2)), l = static_cast<int>(g.next(0, 2));
    Op p = pencil_monomial(i, m, j, 1 - n);
    Op q = pencil_monomial(k, m, l, 1 - n);
    Op pq = ore_mul(p, q);
    auto grid = to_pencil(pq, OreKind::FwdD, RF(static_cast<long>(m)),
                          RF(static_cast<long>(1 - n)));
    REQUIRE(grid.ok());
    Op f_pq = from_pencil(apply_F(*grid.pencil, n, m));
    // F(p), F(q) directly: transposed monomials in the swapped basis
    Op fp = pencil_monomial(j, n, i, 1 - m);
    Op fq = pencil_monomial(l, n, k, 1 - m);
    CHECK(ore_equal(f_pq, ore_mul(fq, fp)));
  }
}

TEST_CASE("delta-hat") {
  long l = 4;
  Op t = gen(OreKind::Tau);
  CHECK(ore_equal(delta_hat(t, l), t));

  Op x = coeff(OreKind::Tau, u());
  Op e = coeff(OreKind::Tau, -u() + RF(l - 1));
  CHECK(ore_equal(delta_hat(x, l), e));

  Lcg g;
  for (int trial = 0; trial < 20; ++trial) {
    Op a = random_op(g, OreKind::Tau);
    CHECK(ore_equal(delta_hat(delta_hat(a, l), l), a));
  }
}

TEST_CASE("interleaved factorial identities: edge subsets") {
  int n = 2, m = 2;
  // empty J: both sides 1
  auto rep = scalar_DJ_identity<Rat>(n, m, {});
  CHECK(rep.ok());
  // J2 = {n+m}: lower side equals (u-n-m+1)d
  auto rep2 = scalar_DJ_identity<Rat>(n, m, {n + m});
  CHECK(rep2.ok());
  Op lhs = ore_scale(dj_lower<Rat>(n, m, {n + m}),
                     falling_factorial(u() - RF(static_cast<long>(n)), m));
  Op expect(OreKind::FwdD);
  expect.add_term(1, u() - RF(static_cast<long>(n + m - 1)));
  CHECK(ore_equal(lhs, expect));
}

TEST_CASE("interleaved factorial identities: all subsets at n=m=2") {
  int n = 2, m = 2;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> J;
    for (int b = 0; b < 4; ++b)
      if (mask & (1 << b)) J.push_back(b + 1);
    auto rep = scalar_DJ_identity<Rat>(n, m, J);
    CHECK_MESSAGE(rep.ok(), "subset mask ", mask, " residual ", rep.residual);
  }
}

TEST_CASE("product relation between rising factorials and difference powers") {
  // (u-c) rising i times d^i equals the falling product of (u-c)d, symbolic c
  Sym cs = sym_aux("c");
  RF c = RF::var(cs);
  for (int i = 1; i <= 6; ++i) {
    Op lhs(OreKind::FwdD);
    lhs.add_term(i, rising_factorial(u() - c, i));
    Op rhs(OreKind::FwdD);
    rhs.add_term(0, RF(1L));
    for (int j = 1; j <= i; ++j) {
      Op f(OreKind::FwdD);
      f.add_term(1, u() - c);
      f.add_term(0, RF(static_cast<long>(1 - j)));
      rhs = ore_mul(rhs, f);
    }
    CHECK(ore_equal(lhs, rhs));
  }
}

TEST_CASE("falling factorial ratio identity") {
  Sym ns = sym_aux("nn");
  RF n = RF::var(ns);
  for (int m = 0; m <= 5; ++m)
    for (int l = 0; l <= m; ++l) {
      RF lhs = falling_factorial(u() - n, m) / falling_factorial(u() - n, m - l);
      RF rhs = rising_factorial(u() - n - RF(static_cast<long>(m)) + RF(1L), l);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("difference wronskian") {
  // single constant function
  CHECK(difference_wronskian<Rat>({RF(1L)}, RF(0L)) == RF(1L));
  // repeated function: zero
  RF f = u() * u() + RF(1L);
  CHECK(difference_wronskian<Rat>({f, f}, RF(2L)).is_zero());
  // n+m = 4, J2 = {3,4}: factors as product times a Vandermonde
  RF c = RF(3L);
  RF f3 = rising_factorial(u() - RF(3L), 1);
  RF f4 = RF(1L);
  RF w = difference_wronskian<Rat>({f3, f4}, c);
  CHECK(w == -(u() - RF(3L)));
}

TEST_CASE("wronskian factorization for the full annihilated family") {
  // n+m = 5, J2 = {3,4,5} of an (n,m) = (2,3) split
  int n = 2, m = 3;
  RF c = RF(static_cast<long>(n + m - 1));
  std::vector<RF> funcs;
  std::vector<long> exps;
  for (int j : {3, 4, 5}) {
    funcs.push_back(rising_factorial(u() - c, n + m - j));
    exps.push_back(n + m - j);
  }
  RF lhs = difference_wronskian<Rat>(funcs, c);
  // right side: product of the functions times the Vandermonde in exps
  RF rhs(1L);
  for (auto& f : funcs) rhs *= f;
  Mat<Rat> vdm(3, 3);
  for (int p = 0; p < 3; ++p)
    for (int s = 0; s < 3; ++s)
      vdm(p, s) = RF(exps[static_cast<std::size_t>(s)]).pow(p);
  rhs *= det(vdm);
  CHECK(lhs == rhs);
}
