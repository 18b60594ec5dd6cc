#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bdl/linalg.hpp"

using namespace bdl;

namespace {

using RF = RatFun<Rat>;
using M = Mat<Rat>;
using V = Vec<Rat>;

RF u() { return RF::var(sym_u()); }

M from_longs(std::initializer_list<std::initializer_list<long>> rows) {
  M m(static_cast<Eigen::Index>(rows.size()),
      static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = RF(v);
    ++i;
  }
  return m;
}

// test-only oracle: characteristic polynomial by cofactor expansion of
// det(x I - M) over the polynomial ring in an auxiliary symbol
std::vector<RF> charpoly_oracle(const M& m) {
  Sym x = sym_aux("x");
  Eigen::Index n = m.rows();
  M a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = (i == j ? RF::var(x) : RF(0L)) - m(i, j);
  RF d = det(a);
  std::vector<RF> c;
  for (int k = 0; k <= n; ++k) {
    RF ck(d.num.coeff_of(x, k));
    c.push_back(ck / RF(d.den));
  }
  return c;
}

struct Lcg {
  std::uint64_t s = 0x2545f4914f6cdd1dULL;
  long next(long lo, long hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((s >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace

TEST_CASE("eigen container works with exact entries") {
  M a = from_longs({{1, 2}, {3, 4}});
  M b = from_longs({{0, 1}, {1, 0}});
  M p = (a * b).eval();
  CHECK(p(0, 0) == RF(2L));
  CHECK(p(1, 1) == RF(3L));
  CHECK(equal(a + b - b, a));
}

TEST_CASE("kernel of rank-one matrix") {
  M m = from_longs({{1, 1}, {1, 1}});
  auto k = kernel(m);
  REQUIRE(k.size() == 1);
  // spanned by (1, -1), up to scale
  CHECK(k[0](0) * RF(-1L) == k[0](1));
  for (auto& v : k) CHECK(is_zero((m * v).eval()));
}

TEST_CASE("kernel of zero matrix is everything") {
  M m = zeros<Rat>(2, 2);
  CHECK(kernel(m).size() == 2);
}

TEST_CASE("symbolic kernel") {
  Sym l = sym_lambda(0);
  RF lam = RF::var(l);
  M m(2, 2);
  m(0, 0) = lam;
  m(0, 1) = RF(1L);
  m(1, 0) = lam * lam;
  m(1, 1) = lam;
  auto k = kernel(m);
  REQUIRE(k.size() == 1);
  M mv = (m * k[0]).eval();
  CHECK(is_zero(mv));
  CHECK(k[0](1) == -lam * k[0](0));
}

TEST_CASE("rank-nullity on random matrices") {
  Lcg g;
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::Index rows = 3, cols = 4;
    M m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = RF(rat(g.next(-3, 3)));
    auto k = kernel(m);
    for (auto& v : k) CHECK(is_zero((m * v).eval()));
    // rank + nullity = cols; rank computed via kernel of the transpose trick
    auto kt = kernel(M(m.transpose()));
    Eigen::Index rank = rows - static_cast<Eigen::Index>(kt.size());
    CHECK(rank + static_cast<Eigen::Index>(k.size()) == cols);
  }
}

TEST_CASE("charpoly of small fixed matrices") {
  auto c = charpoly(identity<Rat>(2));  // (x-1)^2
  REQUIRE(c.size() == 3);
  CHECK(c[0] == RF(1L));
  CHECK(c[1] == RF(-2L));
  CHECK(c[2] == RF(1L));

  M nil = from_longs({{0, 1}, {0, 0}});
  auto cn = charpoly(nil);  // x^2
  CHECK(cn[0].is_zero());
  CHECK(cn[1].is_zero());
  CHECK(cn[2] == RF(1L));
}

TEST_CASE("charpoly matches cofactor oracle up to 5x5") {
  Lcg g;
  for (Eigen::Index n : {3, 4, 5}) {
    M m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        m(i, j) = RF(rat(g.next(-4, 4), g.next(1, 3)));
    auto fast = charpoly(m);
    auto oracle = charpoly_oracle(m);
    REQUIRE(fast.size() == oracle.size());
    for (std::size_t k = 0; k < fast.size(); ++k) CHECK(fast[k] == oracle[k]);
  }
}

TEST_CASE("charpoly rejects non-square input") {
  M m = zeros<Rat>(2, 3);
  CHECK_THROWS_AS((void)charpoly(m), std::invalid_argument);
}

TEST_CASE("unique solve") {
  M a = from_longs({{2, 1}, {1, 1}});
  V b(2);
  b(0) = RF(3L);
  b(1) = RF(2L);
  auto x = solve_unique(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)(0) == RF(1L));
  CHECK((*x)(1) == RF(1L));

  M sing = from_longs({{1, 1}, {1, 1}});
  CHECK(!solve_unique(sing, b).has_value());
}

TEST_CASE("determinant with symbolic entries") {
  Sym l = sym_lambda(0);
  RF lam = RF::var(l);
  M m(2, 2);
  m(0, 0) = u();
  m(0, 1) = RF(1L);
  m(1, 0) = lam;
  m(1, 1) = u();
  CHECK(det(m) == u() * u() - lam);
}
