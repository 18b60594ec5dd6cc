#pragma once
// Dense matrices over RatFun<K> (Eigen container) and the exact kernels the
// rest of the library needs: fraction-free null spaces, unique solves,
// characteristic polynomials.

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "bdl/ratfun.hpp"

namespace Eigen {
template <class K>
struct NumTraits<bdl::RatFun<K>> : GenericNumTraits<bdl::RatFun<K>> {
  typedef bdl::RatFun<K> Real;
  typedef bdl::RatFun<K> NonInteger;
  typedef bdl::RatFun<K> Nested;
  typedef bdl::RatFun<K> Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  static inline Real epsilon() { return Real(); }
  static inline Real dummy_precision() { return Real(); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace bdl {

template <class K>
using Mat = Eigen::Matrix<RatFun<K>, Eigen::Dynamic, Eigen::Dynamic>;

template <class K>
using Vec = Eigen::Matrix<RatFun<K>, Eigen::Dynamic, 1>;

template <class K>
Mat<K> zeros(Eigen::Index r, Eigen::Index c) {
  return Mat<K>::Constant(r, c, RatFun<K>());
}

template <class K>
Mat<K> identity(Eigen::Index n) {
  Mat<K> m = zeros<K>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = RatFun<K>(1L);
  return m;
}

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m.derived().coeff(i, j).is_zero()) return false;
  return true;
}

template <class DA, class DB>
bool equal(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a.derived().coeff(i, j) != b.derived().coeff(i, j)) return false;
  return true;
}

template <class K, class F>
Mat<K> map_entries(const Mat<K>& m, F&& f) {
  Mat<K> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = f(m(i, j));
  return r;
}

template <class K>
Mat<K> shift_u(const Mat<K>& m, const RatFun<K>& s) {
  return map_entries(m, [&](const RatFun<K>& x) { return shift_u(x, s); });
}

template <class K>
Mat<K> substitute(const Mat<K>& m, const std::map<Sym, RatFun<K>>& bind) {
  return map_entries(m, [&](const RatFun<K>& x) { return substitute(x, bind); });
}

template <class K>
Mat<K> deriv_u(const Mat<K>& m) {
  return map_entries(m, [](const RatFun<K>& x) { return x.derivative(sym_u()); });
}

// Right null space, exact.  Rows are cleared of denominators, then a
// fraction-free (Bareiss) elimination runs over the polynomial ring; the
// back substitution reintroduces fractions only in the reported basis.
template <class K>
std::vector<Vec<K>> kernel(const Mat<K>& m_in) {
  const Eigen::Index rows = m_in.rows(), cols = m_in.cols();
  std::vector<std::vector<MPoly<K>>> a(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) {
    MPoly<K> den = MPoly<K>::from_int(1);
    for (Eigen::Index j = 0; j < cols; ++j) den *= m_in(i, j).den;
    a[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(cols));
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& e = m_in(i, j);
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          e.num * divexact(den, e.den);
    }
  }
  std::vector<Eigen::Index> pivot_col;
  MPoly<K> prev = MPoly<K>::from_int(1);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = row; i < rows; ++i) {
      if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[static_cast<std::size_t>(row)], a[static_cast<std::size_t>(piv)]);
    const MPoly<K> p = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    for (Eigen::Index i = row + 1; i < rows; ++i) {
      auto& ri = a[static_cast<std::size_t>(i)];
      const auto& rr = a[static_cast<std::size_t>(row)];
      const MPoly<K> q = ri[static_cast<std::size_t>(col)];
      for (Eigen::Index j = 0; j < cols; ++j) {
        MPoly<K> t = ri[static_cast<std::size_t>(j)] * p -
                     rr[static_cast<std::size_t>(j)] * q;
        ri[static_cast<std::size_t>(j)] = divexact(t, prev);
      }
    }
    prev = p;
    pivot_col.push_back(col);
    ++row;
  }
  const Eigen::Index rank = row;
  std::vector<Vec<K>> basis;
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  for (Eigen::Index free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
    Vec<K> v = Vec<K>::Constant(cols, RatFun<K>());
    v(free_col) = RatFun<K>(1L);
    for (Eigen::Index k = rank - 1; k >= 0; --k) {
      const auto& rk = a[static_cast<std::size_t>(k)];
      const Eigen::Index pc = pivot_col[static_cast<std::size_t>(k)];
      RatFun<K> s;
      for (Eigen::Index j = pc + 1; j < cols; ++j) {
        if (v(j).is_zero() || rk[static_cast<std::size_t>(j)].is_zero()) continue;
        s += RatFun<K>(rk[static_cast<std::size_t>(j)]) * v(j);
      }
      v(pc) = -s / RatFun<K>(rk[static_cast<std::size_t>(pc)]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Unique solution of A x = b; nullopt when the system is singular or
// inconsistent (callers treat that as a genericity failure and resample).
template <class K>
std::optional<Vec<K>> solve_unique(const Mat<K>& a, const Vec<K>& b) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Mat<K> m(rows, cols + 1);
  m.block(0, 0, rows, cols) = a;
  m.col(cols) = b;
  Eigen::Index row = 0;
  std::vector<Eigen::Index> pivot_col;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = row; i < rows; ++i)
      if (!m(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;  // rank deficiency in the unknowns
    m.row(row).swap(m.row(piv));
    RatFun<K> inv_p = RatFun<K>(1L) / m(row, col);
    for (Eigen::Index j = col; j <= cols; ++j) m(row, j) *= inv_p;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      RatFun<K> f = m(i, col);
      for (Eigen::Index j = col; j <= cols; ++j) m(i, j) -= f * m(row, j);
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (Eigen::Index i = row; i < rows; ++i)
    if (!m(i, cols).is_zero()) return std::nullopt;  // inconsistent
  if (row < cols) return std::nullopt;
  Vec<K> x = Vec<K>::Constant(cols, RatFun<K>());
  for (Eigen::Index k = 0; k < cols; ++k) x(k) = m(k, cols);
  return x;
}

namespace detail {
template <class K>
RatFun<K> det_rec(const Mat<K>& m, std::vector<Eigen::Index>& cols, Eigen::Index row) {
  if (cols.empty()) return RatFun<K>(1L);
  RatFun<K> acc;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const RatFun<K>& e = m(row, cols[k]);
    if (e.is_zero()) continue;
    Eigen::Index c = cols[k];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
    RatFun<K> sub = det_rec(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
    RatFun<K> term = e * sub;
    if (k % 2 == 1) term = -term;
    acc += term;
  }
  return acc;
}
}  // namespace detail

// Laplace expansion; the matrices this library takes determinants of are
// small (difference Wronskians, oracle-scale checks).
template <class K>
RatFun<K> det(const Mat<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square input");
  std::vector<Eigen::Index> cols(static_cast<std::size_t>(m.cols()));
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = static_cast<Eigen::Index>(i);
  return detail::det_rec(m, cols, 0);
}

// det(x I - M) by Faddeev-LeVerrier; coefficients returned low degree first.
template <class K>
std::vector<RatFun<K>> charpoly(const Mat<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("charpoly: non-square input");
  const Eigen::Index n = m.rows();
  std::vector<RatFun<K>> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = RatFun<K>(1L);
  Mat<K> mk = zeros<K>(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Mat<K> t = mk;
    for (Eigen::Index i = 0; i < n; ++i) t(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    mk = (m * t).eval();
    RatFun<K> tr;
    for (Eigen::Index i = 0; i < n; ++i) tr += mk(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / RatFun<K>(static_cast<long>(k));
  }
  return c;
}

}  // namespace bdl
