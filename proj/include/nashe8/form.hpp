// Dense binary forms in (u, v) and 2x2 matrices over a field K.
// Form coefficient c[i] multiplies u^(d-i) v^i.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mpoly.hpp"

namespace nashe8 {

template <class K>
struct Mat2 {
  K a{0}, b{0}, c{0}, d{0};

  static Mat2 identity() { return {K(1), K(0), K(0), K(1)}; }
  K det() const { return a * d - b * c; }
  K trace() const { return a + d; }
  Mat2 inverse() const {
    K D = det();
    if (D.is_zero()) throw DivisionByZero();
    K i = K(1) / D;
    return {d * i, -b * i, -c * i, a * i};
  }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  friend bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }
  friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }
  friend bool operator<(const Mat2& x, const Mat2& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.c != y.c) return x.c < y.c;
    return x.d < y.d;
  }
  bool is_diagonal() const { return b.is_zero() && c.is_zero(); }
  template <class L>
  Mat2<L> map(L (*f)(const K&)) const {
    return {f(a), f(b), f(c), f(d)};
  }
  std::string str() const { return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]"; }
};

template <class K>
class Form {
 public:
  Form() = default;
  explicit Form(int degree) : c_(static_cast<size_t>(degree) + 1, K(0)) {}
  explicit Form(std::vector<K> c) : c_(std::move(c)) {}
  // alpha*u + beta*v
  static Form linear(const K& alpha, const K& beta) { return Form(std::vector<K>{alpha, beta}); }
  static Form constant(const K& k) { return Form(std::vector<K>{k}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  K& operator[](int i) { return c_[static_cast<size_t>(i)]; }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  // Index of the first nonzero coefficient (power of v of the lowest v-term).
  int first_nonzero() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    return -1;
  }

  friend bool operator==(const Form& x, const Form& y) { return x.c_ == y.c_; }
  friend bool operator!=(const Form& x, const Form& y) { return !(x == y); }

  friend Form operator+(const Form& x, const Form& y) {
    if (x.degree() != y.degree()) throw std::invalid_argument("adding forms of different degree");
    Form r = x;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += y.c_[i];
    return r;
  }
  Form operator-() const {
    Form r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Form operator-(const Form& x, const Form& y) { return x + (-y); }
  friend Form operator*(const Form& x, const Form& y) {
    Form r(x.degree() + y.degree());
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i].is_zero()) continue;
      for (size_t j = 0; j < y.c_.size(); ++j)
        if (!y.c_[j].is_zero()) r.c_[i + j] += x.c_[i] * y.c_[j];
    }
    return r;
  }
  Form scaled(const K& s) const {
    Form r = *this;
    for (auto& x : r.c_) x = x * s;
    return r;
  }
  Form pow(unsigned n) const {
    Form r = constant(K(1));
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }
  // First nonzero coefficient becomes 1.
  Form normalized() const {
    int i = first_nonzero();
    if (i < 0) throw DivisionByZero();
    return scaled(K(1) / c_[static_cast<size_t>(i)]);
  }

  // F(a u + b v, c u + d v), i.e. F composed with the linear map g.
  Form compose(const Mat2<K>& g) const {
    const Form L1 = linear(g.a, g.b), L2 = linear(g.c, g.d);
    // H_k = H_{k-1} * L1 + c_k * L2^k
    Form h = constant(c_[0]), p2 = constant(K(1));
    for (size_t k = 1; k < c_.size(); ++k) {
      p2 = p2 * L2;
      h = h * L1 + p2.scaled(c_[k]);
    }
    return h;
  }
  K eval(const K& u, const K& v) const {
    // homogeneous Horner
    K s = c_[0];
    K vp(1);
    for (size_t k = 1; k < c_.size(); ++k) {
      vp = vp * v;
      s = s * u + c_[k] * vp;
    }
    return s;
  }
  // Exact quotient, or nullopt.
  std::optional<Form> divide(const Form& g) const {
    int g0 = g.first_nonzero();
    if (g0 < 0) throw DivisionByZero();
    if (is_zero()) return Form(degree() - g.degree());
    if (degree() < g.degree()) return std::nullopt;
    // ascending division in v: treat as polynomials in v, lowest terms first
    Form q(degree() - g.degree());
    std::vector<K> r = c_;
    const K inv = K(1) / g.c_[static_cast<size_t>(g0)];
    for (int i = 0; i <= q.degree(); ++i) {
      K qi = r[static_cast<size_t>(i + g0)] * inv;
      if (qi.is_zero()) continue;
      q.c_[static_cast<size_t>(i)] = qi;
      for (int j = g0; j <= g.degree(); ++j) r[static_cast<size_t>(i + j)] -= qi * g.c_[static_cast<size_t>(j)];
    }
    for (const auto& x : r)
      if (!x.is_zero()) return std::nullopt;
    return q;
  }
  MPoly<K> to_mpoly(int uvar = 0, int vvar = 1) const {
    MPoly<K> p;
    const int d = degree();
    for (int i = 0; i <= d; ++i) {
      Exponent e{};
      e[uvar] = static_cast<uint16_t>(d - i);
      e[vvar] = static_cast<uint16_t>(i);
      p.add_term(e, c_[static_cast<size_t>(i)]);
    }
    return p;
  }
  template <class L, class F>
  Form<L> map(F f) const {
    std::vector<L> v;
    for (const auto& x : c_) v.push_back(f(x));
    return Form<L>(v);
  }
  std::string str() const { return to_mpoly().str({"u", "v"}); }

 private:
  std::vector<K> c_;
};

}  // namespace nashe8
