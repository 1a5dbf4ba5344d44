// Rational functions K(l_1, ..., l_r) in formal moduli. A value is zero iff its
// numerator is the zero polynomial, which is the operational meaning of
// "for generic moduli". Canonical: gcd(num, den) = 1 and den has leading coefficient 1.
#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "mpoly.hpp"

namespace nashe8 {

template <class K>
class GenericScalar {
 public:
  using Poly = MPoly<K>;

  GenericScalar() : den_(K(1)) {}
  GenericScalar(long c) : num_(K(c)), den_(K(1)) {}  // NOLINT
  GenericScalar(const K& c) : num_(c), den_(K(1)) {}  // NOLINT
  GenericScalar(const Poly& p) : num_(p), den_(K(1)) {}  // NOLINT
  GenericScalar(const Poly& n, const Poly& d) : num_(n), den_(d) { normalize(); }

  static GenericScalar modulus(int i) { return GenericScalar(Poly::var(i)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend bool operator==(const GenericScalar& a, const GenericScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const GenericScalar& a, const GenericScalar& b) { return !(a == b); }

  GenericScalar operator-() const {
    GenericScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend GenericScalar operator+(const GenericScalar& a, const GenericScalar& b) {
    if (a.den_ == b.den_) return GenericScalar(a.num_ + b.num_, a.den_);
    return GenericScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend GenericScalar operator-(const GenericScalar& a, const GenericScalar& b) { return a + (-b); }
  friend GenericScalar operator*(const GenericScalar& a, const GenericScalar& b) {
    return GenericScalar(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend GenericScalar operator/(const GenericScalar& a, const GenericScalar& b) {
    if (b.is_zero()) throw DivisionByZero();
    return GenericScalar(a.num_ * b.den_, a.den_ * b.num_);
  }
  GenericScalar& operator+=(const GenericScalar& b) { return *this = *this + b; }
  GenericScalar& operator-=(const GenericScalar& b) { return *this = *this - b; }
  GenericScalar& operator*=(const GenericScalar& b) { return *this = *this * b; }
  GenericScalar& operator/=(const GenericScalar& b) { return *this = *this / b; }
  GenericScalar pow(long e) const {
    if (e < 0) return (GenericScalar(1) / *this).pow(-e);
    GenericScalar r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  // Specialise every modulus; throws DivisionByZero if the denominator vanishes.
  K eval(const std::vector<K>& vals) const {
    K d = den_.eval(vals);
    if (d.is_zero()) throw DivisionByZero();
    return num_.eval(vals) / d;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (den_.is_one()) return num_.str(names);
    return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
  }

 private:
  Poly num_, den_;

  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
      den_ = Poly(K(1));
      return;
    }
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *exact_div(num_, g);
      den_ = *exact_div(den_, g);
    }
    K lc = den_.lead_coeff();
    if (!(lc == K(1))) {
      K inv = K(1) / lc;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }
};

}  // namespace nashe8
