// Exact dense linear algebra over a field, plus fraction-free determinants
// over integral domains (Bareiss) for resultants with polynomial entries.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "mpoly.hpp"

namespace nashe8 {

template <class K>
using Matrix = std::vector<std::vector<K>>;

template <class K>
struct RrefResult {
  Matrix<K> r;
  std::vector<int> pivots;  // pivot column per row
  int rank() const { return static_cast<int>(pivots.size()); }
};

template <class K>
RrefResult<K> rref(Matrix<K> m) {
  RrefResult<K> out;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const K inv = K(1) / m[r][c];
    for (int k = c; k < cols; ++k) m[r][k] = m[r][k] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const K f = m[i][c];
      for (int k = c; k < cols; ++k)
        if (!m[r][k].is_zero()) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(static_cast<size_t>(r));
  out.r = std::move(m);
  return out;
}

template <class K>
int rank(const Matrix<K>& m) {
  return rref(m).rank();
}

// Basis of {x : m x = 0}.
template <class K>
std::vector<std::vector<K>> nullspace(const Matrix<K>& m, int cols) {
  auto R = rref(m);
  std::vector<bool> is_piv(static_cast<size_t>(cols), false);
  for (int p : R.pivots) is_piv[static_cast<size_t>(p)] = true;
  std::vector<std::vector<K>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[static_cast<size_t>(f)]) continue;
    std::vector<K> x(static_cast<size_t>(cols), K(0));
    x[static_cast<size_t>(f)] = K(1);
    for (int i = 0; i < R.rank(); ++i) x[static_cast<size_t>(R.pivots[static_cast<size_t>(i)])] = -R.r[static_cast<size_t>(i)][static_cast<size_t>(f)];
    basis.push_back(std::move(x));
  }
  return basis;
}

template <class K>
std::vector<K> mat_vec(const Matrix<K>& m, const std::vector<K>& x) {
  std::vector<K> y(m.size(), K(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (!m[i][j].is_zero() && !x[j].is_zero()) y[i] += m[i][j] * x[j];
  return y;
}

template <class K>
struct Solution {
  enum Kind { kUnique, kParametric, kNone } kind = kNone;
  std::vector<K> particular;
  std::vector<std::vector<K>> kernel;
  int rank = 0;
};

// Solve m x = rhs exactly; the particular solution is verified by residual.
template <class K>
Solution<K> linear_solve(const Matrix<K>& m, const std::vector<K>& rhs) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  Matrix<K> aug = m;
  for (int i = 0; i < rows; ++i) aug[i].push_back(rhs[static_cast<size_t>(i)]);
  auto R = rref(aug);
  Solution<K> s;
  for (int p : R.pivots)
    if (p == cols) return s;  // inconsistent
  s.rank = R.rank();
  s.particular.assign(static_cast<size_t>(cols), K(0));
  for (int i = 0; i < R.rank(); ++i)
    s.particular[static_cast<size_t>(R.pivots[static_cast<size_t>(i)])] = R.r[static_cast<size_t>(i)][static_cast<size_t>(cols)];
  if (mat_vec(m, s.particular) != rhs) throw ConsistencyError("linear_solve residual");
  s.kernel = nullspace(m, cols);
  s.kind = s.kernel.empty() ? Solution<K>::kUnique : Solution<K>::kParametric;
  return s;
}

// Determinant over an integral domain by Bareiss fraction-free elimination.
template <class R, class ExactDiv>
R bareiss_det(Matrix<R> m, ExactDiv div) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return R(1);
  R prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return R(0);
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

template <class K>
MPoly<K> det_poly(const Matrix<MPoly<K>>& m) {
  return bareiss_det(m, [](const MPoly<K>& a, const MPoly<K>& b) {
    auto q = exact_div(a, b);
    if (!q) throw ConsistencyError("Bareiss step not exact");
    return *q;
  });
}

}  // namespace nashe8
