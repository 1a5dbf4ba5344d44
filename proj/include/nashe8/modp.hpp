// Prime fields F_p, p = 1 mod 60, and the ring maps Q(zeta_N) -> F_p
// (zeta to a primitive N-th root). Used by the fast delta oracle and for
// nonvanishing certificates.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cyclotomic.hpp"

namespace nashe8 {

template <uint64_t P>
class Zp {
 public:
  static constexpr uint64_t modulus = P;
  Zp() = default;
  Zp(long long v) {  // NOLINT
    long long r = v % static_cast<long long>(P);
    v_ = static_cast<uint64_t>(r < 0 ? r + static_cast<long long>(P) : r);
  }
  static Zp raw(uint64_t v) {
    Zp z;
    z.v_ = v % P;
    return z;
  }
  uint64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  friend bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }
  friend bool operator!=(Zp a, Zp b) { return a.v_ != b.v_; }
  friend bool operator<(Zp a, Zp b) { return a.v_ < b.v_; }
  Zp operator-() const { return raw(v_ ? P - v_ : 0); }
  friend Zp operator+(Zp a, Zp b) {
    uint64_t s = a.v_ + b.v_;
    if (s >= P) s -= P;
    return raw(s);
  }
  friend Zp operator-(Zp a, Zp b) { return a + (-b); }
  friend Zp operator*(Zp a, Zp b) {
    return raw(static_cast<uint64_t>((static_cast<unsigned __int128>(a.v_) * b.v_) % P));
  }
  Zp& operator+=(Zp b) { return *this = *this + b; }
  Zp& operator-=(Zp b) { return *this = *this - b; }
  Zp& operator*=(Zp b) { return *this = *this * b; }
  Zp pow(uint64_t e) const {
    Zp r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  Zp inverse() const {
    if (v_ == 0) throw DivisionByZero();
    return pow(P - 2);
  }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  Zp& operator/=(Zp b) { return *this = *this / b; }
  std::string str() const { return std::to_string(v_); }

 private:
  uint64_t v_ = 0;
};

// Two 62-bit primes, both = 1 mod 60.
inline constexpr uint64_t kPrimeA = 4611686018427387421ULL;
inline constexpr uint64_t kPrimeB = 4611686018427387301ULL;
using FpA = Zp<kPrimeA>;
using FpB = Zp<kPrimeB>;

// Smallest-base primitive N-th root of unity in F_P (deterministic).
template <uint64_t P>
Zp<P> primitive_root_of_unity(int n) {
  if ((P - 1) % static_cast<uint64_t>(n) != 0) throw std::invalid_argument("n does not divide p-1");
  int primes[8], np = 0;
  for (int m = n, q = 2; m > 1; ++q) {
    if (m % q == 0) {
      primes[np++] = q;
      while (m % q == 0) m /= q;
    }
  }
  for (uint64_t g = 2;; ++g) {
    Zp<P> w = Zp<P>::raw(g).pow((P - 1) / static_cast<uint64_t>(n));
    bool ok = true;
    for (int i = 0; i < np; ++i)
      if (w.pow(static_cast<uint64_t>(n / primes[i])).is_one()) ok = false;
    if (ok) return w;
  }
}

template <uint64_t P>
Zp<P> reduce_mpz(const mpz_class& z) {
  mpz_class r;
  mpz_class p(std::to_string(P));
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
  return Zp<P>::raw(std::stoull(r.get_str()));
}

// Ring map Q(zeta_N) -> F_P; throws if a denominator vanishes mod P.
template <uint64_t P, int N>
Zp<P> reduce(const Cyclotomic<N>& a) {
  static const Zp<P> w = primitive_root_of_unity<P>(N);
  Zp<P> d = reduce_mpz<P>(a.den());
  if (d.is_zero()) throw DivisionByZero();
  Zp<P> s(0), pw(1);
  for (int i = 0; i < Cyclotomic<N>::degree; ++i) {
    if (a.num(i) != 0) s += reduce_mpz<P>(a.num(i)) * pw;
    pw *= w;
  }
  return s / d;
}

}  // namespace nashe8
