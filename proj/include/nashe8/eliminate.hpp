// Implicitisation of a polynomial plane parametrisation t -> (x(t), y(t)).
// Coefficients may involve formal moduli (other MPoly variables).
#pragma once

#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "mpoly.hpp"

namespace nashe8 {

// Polynomial in t with MPoly coefficients; index = power of t.
template <class K>
using TPoly = std::vector<MPoly<K>>;

template <class K>
int tdeg(const TPoly<K>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!p[static_cast<size_t>(i)].is_zero()) return i;
  return -1;
}

namespace detail {

// Norm of (v - y(t)) in A[t]/(t^a - u): det of the multiplication matrix.
template <class K>
MPoly<K> norm_eliminate(int a, const TPoly<K>& y, int uvar, int vvar) {
  Matrix<MPoly<K>> m(static_cast<size_t>(a), std::vector<MPoly<K>>(static_cast<size_t>(a)));
  for (int j = 0; j < a; ++j) {
    m[static_cast<size_t>(j)][static_cast<size_t>(j)] += MPoly<K>::var(vvar);
    for (size_t k = 0; k < y.size(); ++k) {
      if (y[k].is_zero()) continue;
      int e = static_cast<int>(k) + j;
      m[static_cast<size_t>(e % a)][static_cast<size_t>(j)] -= y[k] * MPoly<K>::var(uvar, e / a);
    }
  }
  return det_poly(m);
}

}  // namespace detail

// Defining polynomial of the branch (u, v) = (x(t), y(t)) in variables uvar, vvar.
// For x = t^a the result is the norm, monic in v of degree a; otherwise the
// Sylvester resultant Res_t(x(t) - u, y(t) - v), made monic.
template <class K>
MPoly<K> eliminate_t(const TPoly<K>& x, const TPoly<K>& y, int uvar = 0, int vvar = 1) {
  const int dx = tdeg(x), dy = tdeg(y);
  if (dx <= 0 && dy <= 0) throw std::invalid_argument("eliminate_t: constant parametrisation");
  for (const auto* p : {&x, &y})
    for (const auto& c : *p)
      if (c.uses(uvar) || c.uses(vvar)) throw std::invalid_argument("eliminate_t: coefficient uses u or v");
  bool monomial_x = dx > 0 && x[static_cast<size_t>(dx)].is_one();
  for (int i = 0; i < dx && monomial_x; ++i) monomial_x = x[static_cast<size_t>(i)].is_zero();
  if (monomial_x) return detail::norm_eliminate(dx, y, uvar, vvar);
  if (dx <= 0 || dy <= 0) {
    // graph of a constant coordinate: the branch is a line
    return dx <= 0 ? (MPoly<K>::var(uvar) - x[0]).monic() : (MPoly<K>::var(vvar) - y[0]).monic();
  }
  TPoly<K> P = x, Q = y;
  P.resize(static_cast<size_t>(dx) + 1);
  Q.resize(static_cast<size_t>(dy) + 1);
  P[0] -= MPoly<K>::var(uvar);
  Q[0] -= MPoly<K>::var(vvar);
  const int n = dx + dy;
  Matrix<MPoly<K>> S(static_cast<size_t>(n), std::vector<MPoly<K>>(static_cast<size_t>(n)));
  for (int r = 0; r < dy; ++r)
    for (int i = 0; i <= dx; ++i) S[static_cast<size_t>(r)][static_cast<size_t>(r + dx - i)] = P[static_cast<size_t>(i)];
  for (int r = 0; r < dx; ++r)
    for (int i = 0; i <= dy; ++i) S[static_cast<size_t>(dy + r)][static_cast<size_t>(r + dy - i)] = Q[static_cast<size_t>(i)];
  return det_poly(S).monic();
}

}  // namespace nashe8
