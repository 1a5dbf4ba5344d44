// Truncated univariate power series in t over a ring R (a field or MPoly).
// Storage is sparse. prec() is the first exponent whose coefficient is not
// known; exact() means the series is a polynomial and prec() is irrelevant.
#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "errors.hpp"

namespace nashe8 {

inline constexpr int kDefaultTruncation = 256;

template <class R>
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(int cap) : cap_(cap) {}

  // c * t^k, exact.
  static PowerSeries monomial(const R& c, int k, int cap = kDefaultTruncation) {
    PowerSeries s(cap);
    if (k >= cap) {
      s.exact_ = false;
      s.prec_ = cap;
      return s;
    }
    if (!c.is_zero()) s.c_.emplace(k, c);
    return s;
  }
  static PowerSeries constant(const R& c, int cap = kDefaultTruncation) { return monomial(c, 0, cap); }

  int cap() const { return cap_; }
  bool exact() const { return exact_; }
  int prec() const { return exact_ ? std::numeric_limits<int>::max() : prec_; }
  const std::map<int, R>& coeffs() const { return c_; }
  R coeff(int k) const {
    if (k >= prec()) throw InsufficientPrecision("coefficient of t^" + std::to_string(k));
    auto it = c_.find(k);
    return it == c_.end() ? R(0) : it->second;
  }
  int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }

  // Vanishing order; nullopt for the exactly-zero series.
  std::optional<int> order() const {
    if (!c_.empty()) return c_.begin()->first;
    if (exact_) return std::nullopt;
    throw InsufficientPrecision("all " + std::to_string(prec_) + " known coefficients vanish");
  }

  PowerSeries operator-() const {
    PowerSeries r = *this;
    for (auto& [k, c] : r.c_) c = -c;
    return r;
  }
  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.cap_, b.cap_));
    r.exact_ = a.exact_ && b.exact_;
    r.prec_ = std::min(a.prec(), b.prec());
    r.c_ = a.c_;
    for (const auto& [k, c] : b.c_) {
      auto it = r.c_.find(k);
      if (it == r.c_.end()) r.c_.emplace(k, c);
      else {
        it->second = it->second + c;
        if (it->second.is_zero()) r.c_.erase(it);
      }
    }
    r.clip();
    return r;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.cap_, b.cap_));
    // known range: a*b is determined below min(prec_a + ord_b, prec_b + ord_a)
    const long big = std::numeric_limits<int>::max();
    long oa = a.c_.empty() ? (a.exact_ ? big : a.prec_) : a.c_.begin()->first;
    long ob = b.c_.empty() ? (b.exact_ ? big : b.prec_) : b.c_.begin()->first;
    long pa = a.exact_ ? big : a.prec_, pb = b.exact_ ? big : b.prec_;
    long p = std::min(pa + ob, pb + oa);
    r.exact_ = p >= big;
    r.prec_ = static_cast<int>(std::min<long>(p, big - 1));
    const int lim = std::min<int>(r.exact_ ? std::numeric_limits<int>::max() : r.prec_, std::numeric_limits<int>::max());
    for (const auto& [i, x] : a.c_)
      for (const auto& [j, y] : b.c_) {
        if (i + j >= lim || i + j >= r.cap_) {
          if (i + j >= r.cap_ && r.exact_) {
            r.exact_ = false;
            r.prec_ = r.cap_;
          }
          continue;
        }
        R v = x * y;
        if (v.is_zero()) continue;
        auto it = r.c_.find(i + j);
        if (it == r.c_.end()) r.c_.emplace(i + j, std::move(v));
        else {
          it->second = it->second + v;
          if (it->second.is_zero()) r.c_.erase(it);
        }
      }
    r.clip();
    return r;
  }
  PowerSeries scaled(const R& s) const {
    PowerSeries r(cap_);
    r.exact_ = exact_;
    r.prec_ = prec_;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : c_) {
      R v = c * s;
      if (!v.is_zero()) r.c_.emplace(k, std::move(v));
    }
    return r;
  }
  PowerSeries pow(unsigned n) const {
    PowerSeries r = constant(R(1), cap_), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }
  // s(t) -> s(t^k)
  PowerSeries inflate(int k) const {
    PowerSeries r(cap_);
    r.exact_ = exact_;
    r.prec_ = prec_ * k;
    for (const auto& [e, c] : c_) r.c_.emplace(e * k, c);
    r.clip();
    return r;
  }
  // s(t) = f(t^k) -> f(t); throws unless every known exponent is divisible by k.
  PowerSeries deflate(int k) const {
    PowerSeries r(cap_);
    r.exact_ = exact_;
    r.prec_ = (prec_ + k - 1) / k;
    for (const auto& [e, c] : c_) {
      if (e % k) throw ConsistencyError("series is not a function of t^" + std::to_string(k));
      r.c_.emplace(e / k, c);
    }
    return r;
  }
  template <class F>
  auto map_coeffs(F f) const {
    using S = decltype(f(std::declval<R>()));
    PowerSeries<S> r(cap_);
    r.set_state(exact_, prec_);
    for (const auto& [k, c] : c_) {
      S v = f(c);
      if (!v.is_zero()) r.set_coeff(k, v);
    }
    return r;
  }
  void set_state(bool exact, int prec) {
    exact_ = exact;
    prec_ = prec;
  }
  void set_coeff(int k, const R& c) {
    if (c.is_zero()) c_.erase(k);
    else c_[k] = c;
  }

  std::string str(int max_terms = 8) const {
    std::string s;
    int n = 0;
    for (const auto& [k, c] : c_) {
      if (n++ == max_terms) {
        s += " + ...";
        break;
      }
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")*t^" + std::to_string(k);
    }
    if (s.empty()) s = "0";
    if (!exact_) s += " + O(t^" + std::to_string(prec_) + ")";
    return s;
  }

 private:
  std::map<int, R> c_;
  int cap_ = kDefaultTruncation;
  bool exact_ = true;
  int prec_ = 0;  // meaningful only when !exact_

  void clip() {
    int lim = exact_ ? cap_ : std::min(prec_, cap_);
    if (!exact_) prec_ = lim;
    while (!c_.empty() && c_.rbegin()->first >= lim) {
      c_.erase(std::prev(c_.end()));
      if (exact_) {
        exact_ = false;
        prec_ = cap_;
      }
    }
  }
};

// Vanishing order of a series that must not be identically zero.
template <class R>
int t_order(const PowerSeries<R>& s) {
  auto o = s.order();
  if (!o) throw ConsistencyError("t_order of the zero series");
  return *o;
}

}  // namespace nashe8
