// Dense reference elimination, kept apart from the library's sparse fraction-free code.
// Plain textbook Gauss on a copy of the matrix; slow but obviously correct.
#ifndef SKELETAL_TESTS_ORACLE_HPP
#define SKELETAL_TESTS_ORACLE_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skeletal/linalg.hpp"

namespace oracle {

using Dense = std::vector<std::vector<mpq_class>>;

inline Dense dense(const skeletal::MatQ& m) {
  Dense a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

inline std::size_t rank(Dense a) {
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const skeletal::MatQ& m) { return oracle::rank(dense(m)); }

// reduced row echelon form in place; returns pivot columns
inline std::vector<std::size_t> rref(Dense& a, std::size_t cols) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

// basis of the null space, one vector per free column
inline std::vector<std::vector<mpq_class>> kernel(const skeletal::MatQ& m) {
  Dense a = dense(m);
  auto piv = rref(a, m.cols());
  std::vector<std::vector<mpq_class>> out;
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<mpq_class> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
    out.push_back(v);
  }
  return out;
}

// some x with m x = b, if one exists
inline std::optional<std::vector<mpq_class>> solve(const skeletal::MatQ& m, const std::vector<mpq_class>& b) {
  Dense a = dense(m);
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  auto piv = rref(a, m.cols() + 1);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<mpq_class> x(m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = a[i][m.cols()];
  return x;
}

inline std::vector<mpq_class> apply(const skeletal::MatQ& m, const std::vector<mpq_class>& v) {
  std::vector<mpq_class> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

// rank of the connecting map H^q(quot) -> H^{q+1}(sub) for 0 -> sub -> mid -> quot -> 0,
// lifting every cocycle through a dense solve
inline std::size_t connecting_rank(const skeletal::CochainComplexQ& sub, const skeletal::CochainComplexQ& mid,
                                   const std::vector<skeletal::MatQ>& inj, const std::vector<skeletal::MatQ>& surj,
                                   const skeletal::CochainComplexQ& quot, std::size_t q) {
  if (q + 1 >= sub.dims.size() || q >= quot.dims.size()) return 0;
  Dense cols;  // column vectors in sub term q+1
  auto bd = sub.differential(q);
  std::size_t target = sub.dims[q + 1];
  Dense boundaries;
  for (std::size_t j = 0; j < bd.cols(); ++j) {
    std::vector<mpq_class> c(target);
    for (std::size_t i = 0; i < target; ++i) c[i] = bd(i, j);
    boundaries.push_back(c);
  }
  for (const auto& z : oracle::kernel(quot.differential(q))) {
    auto x = oracle::solve(surj[q], z);
    if (!x) throw std::logic_error("oracle: surjection does not hit a cocycle");
    auto dx = oracle::apply(mid.differential(q), *x);
    auto y = oracle::solve(inj[q + 1], dx);
    if (!y) throw std::logic_error("oracle: d(lift) is not in the subcomplex");
    cols.push_back(*y);
  }
  // rank(span(images) + boundaries) - rank(boundaries), on row-vector form
  Dense both = boundaries;
  both.insert(both.end(), cols.begin(), cols.end());
  return oracle::rank(both) - oracle::rank(boundaries);
}

inline Dense multiply(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols) {
  Dense c(a.size(), std::vector<mpq_class>(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline bool all_zero(const Dense& a) {
  for (const auto& r : a)
    for (const auto& x : r)
      if (x != 0) return false;
  return true;
}

// Betti numbers from term dimensions and differentials d[i]: term i -> term i+1
inline std::vector<std::size_t> betti(const std::vector<std::size_t>& dims, const std::vector<skeletal::MatQ>& d) {
  std::vector<std::size_t> rk(dims.size() + 1, 0);
  for (std::size_t i = 0; i < d.size(); ++i) rk[i + 1] = oracle::rank(d[i]);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dims.size(); ++i) out.push_back(dims[i] - rk[i + 1] - rk[i]);
  return out;
}

inline std::vector<std::size_t> betti(const skeletal::CochainComplexQ& c) { return oracle::betti(c.dims, c.d); }

// d_{i+1} d_i = 0, recomputed densely
inline bool squares_to_zero(const skeletal::CochainComplexQ& c) {
  for (std::size_t i = 0; i + 1 < c.d.size(); ++i) {
    const auto& a = c.d[i];
    const auto& b = c.d[i + 1];
    if (!oracle::all_zero(oracle::multiply(oracle::dense(b), oracle::dense(a), a.rows(), a.cols()))) return false;
  }
  return true;
}

}  // namespace oracle

#endif
