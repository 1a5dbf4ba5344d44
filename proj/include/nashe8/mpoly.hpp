// Sparse multivariate polynomials over an exact field K, at most kMaxVars
// variables identified by index. Terms are kept in descending lex order
// (variable 0 most significant), no zero coefficients stored.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashe8 {

inline constexpr int kMaxVars = 12;
using Exponent = std::array<uint16_t, kMaxVars>;

inline bool divides(const Exponent& a, const Exponent& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

template <class K>
class MPoly {
 public:
  using Terms = std::map<Exponent, K, std::greater<Exponent>>;
  using field_type = K;

  MPoly() = default;
  MPoly(const K& c) {  // NOLINT
    if (!c.is_zero()) t_.emplace(Exponent{}, c);
  }
  MPoly(long c) : MPoly(K(c)) {}  // NOLINT

  static MPoly var(int i, int e = 1) {
    check_var(i);
    Exponent x{};
    x[i] = static_cast<uint16_t>(e);
    return monomial(x, K(1));
  }
  static MPoly monomial(const Exponent& e, const K& c) {
    MPoly p;
    if (!c.is_zero()) p.t_.emplace(e, c);
    return p;
  }

  const Terms& terms() const { return t_; }
  size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Exponent{}); }
  bool is_one() const { return is_constant() && !t_.empty() && t_.begin()->second == K(1); }
  K constant_term() const { return coeff(Exponent{}); }
  K coeff(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? K(0) : it->second;
  }
  const Exponent& lead_exp() const { return t_.begin()->first; }
  const K& lead_coeff() const { return t_.begin()->second; }

  int degree(int v) const {
    int d = t_.empty() ? -1 : 0;
    for (const auto& [e, c] : t_) d = std::max<int>(d, e[v]);
    return d;
  }
  int min_degree(int v) const {
    int d = -1;
    for (const auto& [e, c] : t_) d = d < 0 ? e[v] : std::min<int>(d, e[v]);
    return d;
  }
  int total_degree() const {
    int d = t_.empty() ? -1 : 0;
    for (const auto& [e, c] : t_) {
      int s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }
  bool uses(int v) const {
    for (const auto& [e, c] : t_)
      if (e[v]) return true;
    return false;
  }
  int max_var() const {
    int m = -1;
    for (const auto& [e, c] : t_)
      for (int i = kMaxVars - 1; i > m; --i)
        if (e[i]) { m = i; break; }
    return m;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
  // Arbitrary total order (for use as a map key).
  friend bool operator<(const MPoly& a, const MPoly& b) { return a.t_ < b.t_; }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }
  MPoly& operator+=(const MPoly& b) {
    for (const auto& [e, c] : b.t_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& b) {
    for (const auto& [e, c] : b.t_) add_term(e, -c);
    return *this;
  }
  MPoly& operator*=(const MPoly& b) { return *this = *this * b; }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        Exponent e;
        for (int i = 0; i < kMaxVars; ++i) e[i] = static_cast<uint16_t>(ea[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MPoly scaled(const K& c) const {
    if (c.is_zero()) return MPoly();
    MPoly r = *this;
    for (auto& [e, x] : r.t_) x = x * c;
    return r;
  }
  MPoly pow(unsigned n) const {
    MPoly r(K(1)), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }
  // Leading coefficient 1 (zero stays zero).
  MPoly monic() const { return is_zero() ? *this : scaled(K(1) / lead_coeff()); }

  // Substitute polynomial q for variable v.
  MPoly subst(int v, const MPoly& q) const {
    std::vector<MPoly> cs = coeffs_in(v);
    MPoly r;
    for (size_t k = cs.size(); k-- > 0;) r = r * q + cs[k];
    return r;
  }
  // Evaluate at values for every variable (vals[i] for variable i).
  K eval(const std::vector<K>& vals) const {
    K s(0);
    for (const auto& [e, c] : t_) {
      K m = c;
      for (int i = 0; i < kMaxVars; ++i)
        if (e[i]) m = m * vals.at(static_cast<size_t>(i)).pow(e[i]);
      s += m;
    }
    return s;
  }
  // Image under a coefficient map and per-variable substitution into another ring R.
  template <class R, class CoeffMap, class VarMap>
  R map_to(CoeffMap cmap, VarMap vmap) const {
    R s(0);
    for (const auto& [e, c] : t_) {
      R m = cmap(c);
      for (int i = 0; i < kMaxVars; ++i)
        for (int k = 0; k < e[i]; ++k) m = m * vmap(i);
      s = s + m;
    }
    return s;
  }
  MPoly partial(int v) const {
    MPoly r;
    for (const auto& [e, c] : t_) {
      if (!e[v]) continue;
      Exponent f = e;
      --f[v];
      r.add_term(f, c * K(static_cast<long>(e[v])));
    }
    return r;
  }
  // Coefficients as polynomials in the remaining variables, index = power of v.
  std::vector<MPoly> coeffs_in(int v) const {
    std::vector<MPoly> cs(static_cast<size_t>(std::max(degree(v), 0)) + 1);
    for (const auto& [e, c] : t_) {
      Exponent f = e;
      f[v] = 0;
      cs[e[v]].add_term(f, c);
    }
    return cs;
  }
  static MPoly from_coeffs_in(int v, const std::vector<MPoly>& cs) {
    MPoly r;
    for (size_t k = 0; k < cs.size(); ++k) r += cs[k] * var(v, static_cast<int>(k));
    return r;
  }
  // Weighted degree of the lowest / highest term.
  int weighted_degree(const std::vector<int>& w, bool lowest = false) const {
    int d = -1;
    for (const auto& [e, c] : t_) {
      int s = 0;
      for (size_t i = 0; i < w.size(); ++i) s += w[i] * e[i];
      if (d < 0 || (lowest ? s < d : s > d)) d = s;
    }
    return d;
  }
  // Drop every term whose weighted degree exceeds cap.
  MPoly truncate_weighted(const std::vector<int>& w, int cap) const {
    MPoly r;
    for (const auto& [e, c] : t_) {
      int s = 0;
      for (size_t i = 0; i < w.size(); ++i) s += w[i] * e[i];
      if (s <= cap) r.t_.emplace(e, c);
    }
    return r;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
      bool has_mono = e != Exponent{};
      std::string cs = c.str();
      if (!first) os << " + ";
      first = false;
      bool simple = cs.find_first_of(" ") == std::string::npos;
      if (!has_mono) os << cs;
      else if (cs != "1") os << (simple ? cs : "(" + cs + ")") << "*";
      bool firstv = true;
      for (int i = 0; i < kMaxVars; ++i) {
        if (!e[i]) continue;
        if (!firstv) os << "*";
        firstv = false;
        os << (static_cast<size_t>(i) < names.size() ? names[static_cast<size_t>(i)] : "x" + std::to_string(i));
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

  void add_term(const Exponent& e, const K& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

 private:
  Terms t_;
  static void check_var(int i) {
    if (i < 0 || i >= kMaxVars) throw std::out_of_range("variable index");
  }
};

// Exact quotient a / b, or nullopt when b does not divide a.
template <class K>
std::optional<MPoly<K>> exact_div(const MPoly<K>& a, const MPoly<K>& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  MPoly<K> r = a, q;
  const Exponent& lb = b.lead_exp();
  const K inv = K(1) / b.lead_coeff();
  while (!r.is_zero()) {
    const Exponent& lr = r.lead_exp();
    if (!divides(lb, lr)) return std::nullopt;
    Exponent e;
    for (int i = 0; i < kMaxVars; ++i) e[i] = static_cast<uint16_t>(lr[i] - lb[i]);
    auto m = MPoly<K>::monomial(e, r.lead_coeff() * inv);
    q += m;
    r -= m * b;
  }
  return q;
}

template <class K>
MPoly<K> gcd(const MPoly<K>& a, const MPoly<K>& b);

namespace detail {

// lc(b)^(deg a - deg b + 1) * a mod b, as polynomials in variable v.
template <class K>
MPoly<K> pseudo_rem(const MPoly<K>& a, const MPoly<K>& b, int v) {
  auto bc = b.coeffs_in(v);
  const int db = static_cast<int>(bc.size()) - 1;
  const MPoly<K>& lb = bc.back();
  auto rc = a.coeffs_in(v);
  for (;;) {
    while (rc.size() > 1 && rc.back().is_zero()) rc.pop_back();
    const int dr = static_cast<int>(rc.size()) - 1;
    if (dr < db || (dr == 0 && rc[0].is_zero())) break;
    MPoly<K> lr = rc.back();
    for (auto& c : rc) c = c * lb;
    for (int i = 0; i <= db; ++i) rc[static_cast<size_t>(dr - db + i)] -= lr * bc[static_cast<size_t>(i)];
    if (!rc.back().is_zero()) throw std::logic_error("pseudo_rem: leading term survived");
    if (dr == 0) break;
  }
  return MPoly<K>::from_coeffs_in(v, rc);
}

template <class K>
MPoly<K> content_in(const MPoly<K>& p, int v) {
  MPoly<K> g;
  for (const auto& c : p.coeffs_in(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

}  // namespace detail

// Monic gcd over K; recursive primitive remainder sequences.
template <class K>
MPoly<K> gcd(const MPoly<K>& a, const MPoly<K>& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MPoly<K>(K(1));
  const int v = std::max(a.max_var(), b.max_var());
  if (!a.uses(v)) return gcd(a, detail::content_in(b, v));
  if (!b.uses(v)) return gcd(detail::content_in(a, v), b);
  MPoly<K> ca = detail::content_in(a, v), cb = detail::content_in(b, v);
  MPoly<K> p = *exact_div(a, ca), q = *exact_div(b, cb);
  MPoly<K> g = gcd(ca, cb);
  if (p.degree(v) < q.degree(v)) std::swap(p, q);
  while (!q.is_zero() && q.uses(v)) {
    MPoly<K> r = detail::pseudo_rem(p, q, v);
    p = q;
    if (r.is_zero()) {
      q = r;
      break;
    }
    q = *exact_div(r, detail::content_in(r, v));
  }
  if (!q.is_zero()) return g.monic();  // q became free of v: primitive parts are coprime
  MPoly<K> pp = *exact_div(p, detail::content_in(p, v));
  return (g * pp).monic();
}

}  // namespace nashe8
