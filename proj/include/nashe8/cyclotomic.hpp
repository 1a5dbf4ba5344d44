// Exact arithmetic in Q(zeta_N): integer coordinates in the power basis
// 1, zeta, ..., zeta^(phi(N)-1) over one positive denominator. Canonical,
// so equality is coordinate equality.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"

namespace nashe8 {

namespace detail {

constexpr int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

constexpr int moebius(int n) {
  int k = 0;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++k;
    }
  }
  if (n > 1) ++k;
  return (k % 2) ? -1 : 1;
}

// Phi_N = prod_{d | N} (x^d - 1)^mu(N/d), as integer coefficients (low first).
template <int N>
constexpr std::array<long, euler_phi(N) + 1> cyclotomic_poly() {
  constexpr int L = 4 * N + 4;
  std::array<long, L> num{}, den{};
  num[0] = 1;
  den[0] = 1;
  auto mul = [](std::array<long, L>& a, int d) {
    // a *= (x^d - 1)
    for (int i = L - 1; i >= 0; --i) {
      long v = -a[i];
      if (i >= d) v += a[i - d];
      a[i] = v;
    }
  };
  for (int d = 1; d <= N; ++d) {
    if (N % d) continue;
    int m = moebius(N / d);
    if (m == 1) mul(num, d);
    if (m == -1) mul(den, d);
  }
  // exact division num / den; den has constant term +-1
  std::array<long, L> q{};
  int dn = 0, dd = 0;
  for (int i = 0; i < L; ++i) {
    if (num[i]) dn = i;
    if (den[i]) dd = i;
  }
  for (int i = dn - dd; i >= 0; --i) {
    long c = num[i + dd] / den[dd];
    q[i] = c;
    for (int j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
  }
  std::array<long, euler_phi(N) + 1> out{};
  for (int i = 0; i <= euler_phi(N); ++i) out[i] = q[i];
  return out;
}

}  // namespace detail

template <int N>
class Cyclotomic {
 public:
  static constexpr int order = N;
  static constexpr int degree = detail::euler_phi(N);

  Cyclotomic() : den_(1) {}
  Cyclotomic(long v) : den_(1) { num_[0] = v; }  // NOLINT implicit by design
  Cyclotomic(const mpz_class& v) : den_(1) { num_[0] = v; }
  Cyclotomic(const mpq_class& v) : den_(v.get_den()) { num_[0] = v.get_num(); }

  // Element from rational coordinates in the power basis.
  static Cyclotomic from_coords(const std::vector<mpq_class>& c) {
    if (c.size() > static_cast<size_t>(degree))
      throw std::invalid_argument("too many coordinates");
    Cyclotomic r;
    mpz_class L = 1;
    for (const auto& x : c) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den_mpz_t());
    for (size_t i = 0; i < c.size(); ++i) r.num_[i] = c[i].get_num() * (L / c[i].get_den());
    r.den_ = L;
    r.normalize();
    return r;
  }

  // zeta^k for any integer k.
  static Cyclotomic zeta_pow(long k) {
    k %= N;
    if (k < 0) k += N;
    std::vector<mpz_class> w(static_cast<size_t>(k) + 1);
    w[static_cast<size_t>(k)] = 1;
    Cyclotomic r;
    r.reduce_from(w, 1);
    return r;
  }
  static Cyclotomic zeta() { return zeta_pow(1); }

  mpq_class coord(int i) const {
    mpq_class q(num_[i], den_);
    q.canonicalize();
    return q;
  }
  std::vector<mpq_class> coords() const {
    std::vector<mpq_class> v;
    for (int i = 0; i < degree; ++i) v.push_back(coord(i));
    return v;
  }
  const mpz_class& num(int i) const { return num_[i]; }
  const mpz_class& den() const { return den_; }

  bool is_zero() const {
    for (const auto& x : num_)
      if (x != 0) return false;
    return true;
  }
  bool is_one() const {
    if (den_ != 1 || num_[0] != 1) return false;
    for (int i = 1; i < degree; ++i)
      if (num_[i] != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (int i = 1; i < degree; ++i)
      if (num_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
  // Arbitrary total order on canonical forms (for sets and maps).
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.den_ != b.den_) return a.den_ < b.den_;
    for (int i = 0; i < degree; ++i)
      if (a.num_[i] != b.num_[i]) return a.num_[i] < b.num_[i];
    return false;
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.num_) x = -x;
    return r;
  }
  Cyclotomic& operator+=(const Cyclotomic& b) {
    if (den_ == b.den_) {
      for (int i = 0; i < degree; ++i) num_[i] += b.num_[i];
    } else {
      for (int i = 0; i < degree; ++i) num_[i] = num_[i] * b.den_ + b.num_[i] * den_;
      den_ *= b.den_;
    }
    normalize();
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this += -b; }
  Cyclotomic& operator*=(const Cyclotomic& b) {
    *this = *this * b;
    return *this;
  }
  Cyclotomic& operator/=(const Cyclotomic& b) {
    *this = *this * b.inverse();
    return *this;
  }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero() || b.is_zero()) return Cyclotomic();
    std::vector<mpz_class> w(2 * degree - 1);
    for (int i = 0; i < degree; ++i) {
      if (a.num_[i] == 0) continue;
      for (int j = 0; j < degree; ++j)
        if (b.num_[j] != 0) w[i + j] += a.num_[i] * b.num_[j];
    }
    Cyclotomic r;
    r.reduce_from(w, a.den_ * b.den_);
    return r;
  }

  // Galois automorphism zeta -> zeta^k, gcd(k, N) = 1.
  Cyclotomic galois(int k) const {
    k %= N;
    if (k < 0) k += N;
    std::vector<mpz_class> w(N);
    for (int i = 0; i < degree; ++i)
      if (num_[i] != 0) w[static_cast<size_t>((i * k) % N)] += num_[i];
    Cyclotomic r;
    r.reduce_from(w, den_);
    return r;
  }

  // a^-1 = prod_{sigma != 1} sigma(a) / N(a), the norm being rational.
  Cyclotomic inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) {
      Cyclotomic r;
      r.num_[0] = den_;
      r.den_ = num_[0];
      r.normalize();
      return r;
    }
    Cyclotomic c(1);
    for (int k = 2; k < N; ++k)
      if (std::gcd(k, N) == 1) c *= galois(k);
    const Cyclotomic n = c * *this;
    if (!n.is_rational()) throw std::logic_error("norm is not rational");
    mpq_class q(n.den_, n.num_[0]);
    q.canonicalize();
    return c * Cyclotomic(q);
  }

  Cyclotomic pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  // Image under zeta_N -> zeta_M^(M/N); requires N | M.
  template <int M>
  Cyclotomic<M> embed() const {
    static_assert(M % N == 0, "target field must contain zeta_N");
    Cyclotomic<M> r;
    const auto z = Cyclotomic<M>::zeta_pow(M / N);
    Cyclotomic<M> p(1);
    for (int i = 0; i < degree; ++i) {
      if (num_[i] != 0) r += p * Cyclotomic<M>(num_[i]);
      p *= z;
    }
    return r / Cyclotomic<M>(den_);
  }

  // Human-readable form, e.g. "1/2 + 3*z5^2".
  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < degree; ++i) {
      mpq_class c = coord(i);
      if (c == 0) continue;
      bool neg = c < 0;
      mpq_class a = neg ? mpq_class(-c) : c;
      if (!first) os << (neg ? " - " : " + ");
      else if (neg) os << "-";
      if (i == 0) os << a.get_str();
      else if (a == 1) os << "z" << N << "^" << i;
      else os << a.get_str() << "*z" << N << "^" << i;
      first = false;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& a) { return os << a.str(); }

 private:
  std::array<mpz_class, degree> num_{};
  mpz_class den_;

  static const std::array<long, degree + 1>& phi_coeffs() {
    static const auto c = detail::cyclotomic_poly<N>();
    return c;
  }

  // w holds integer coefficients of an arbitrary-degree polynomial in zeta.
  void reduce_from(std::vector<mpz_class>& w, const mpz_class& den) {
    const auto& phi = phi_coeffs();
    for (int k = static_cast<int>(w.size()) - 1; k >= degree; --k) {
      if (w[k] == 0) continue;
      mpz_class c = w[k];
      w[k] = 0;
      for (int j = 0; j < degree; ++j)
        if (phi[j] != 0) w[k - degree + j] -= c * phi[j];
    }
    for (int i = 0; i < degree; ++i) num_[i] = i < static_cast<int>(w.size()) ? w[i] : 0;
    den_ = den;
    normalize();
  }

  void normalize() {
    if (den_ == 0) throw DivisionByZero();
    if (den_ < 0) {
      den_ = -den_;
      for (auto& x : num_) x = -x;
    }
    mpz_class g = den_;
    for (const auto& x : num_) {
      if (g == 1) break;
      if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (is_zero()) {
      den_ = 1;
      return;
    }
    if (g != 1) {
      den_ /= g;
      for (auto& x : num_) x /= g;
    }
  }
};

using Q5 = Cyclotomic<5>;
using Q60 = Cyclotomic<60>;

}  // namespace nashe8
