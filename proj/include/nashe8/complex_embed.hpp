// Numeric sanity checks only: the embedding zeta_N -> exp(2 pi i / N) with MPFR.
// Nothing in the proof path reads these values.
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "cyclotomic.hpp"

namespace nashe8 {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rf", digits, v_);
    std::string r(s);
    mpfr_free_str(s);
    return r;
  }

 private:
  mpfr_t v_;
};

struct ComplexApprox {
  BigFloat re, im;
};

inline mpfr_prec_t bits_for_digits(int digits) { return static_cast<mpfr_prec_t>(digits * 3.33) + 64; }

// |error| < 10^-digits for moderate coefficient sizes (working precision has 64 guard bits).
template <int N>
ComplexApprox embed_complex(const Cyclotomic<N>& a, int digits) {
  const mpfr_prec_t p = bits_for_digits(digits);
  BigFloat re(p), im(p), ang(p), c(p), s(p), q(p), pi(p);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  for (int k = 0; k < Cyclotomic<N>::degree; ++k) {
    if (a.num(k) == 0) continue;
    mpfr_mul_ui(ang.get(), pi.get(), 2UL * static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_div_ui(ang.get(), ang.get(), static_cast<unsigned long>(N), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
    mpfr_set_z(q.get(), a.num(k).get_mpz_t(), MPFR_RNDN);
    mpfr_fma(re.get(), q.get(), c.get(), re.get(), MPFR_RNDN);
    mpfr_fma(im.get(), q.get(), s.get(), im.get(), MPFR_RNDN);
  }
  mpfr_div_z(re.get(), re.get(), a.den().get_mpz_t(), MPFR_RNDN);
  mpfr_div_z(im.get(), im.get(), a.den().get_mpz_t(), MPFR_RNDN);
  return {re, im};
}

// max(|re(x)-re(y)|, |im(x)-im(y)|) < 10^-digits
inline bool approx_equal(const ComplexApprox& x, const ComplexApprox& y, int digits) {
  const mpfr_prec_t p = mpfr_get_prec(x.re.get());
  BigFloat d(p), tol(p);
  mpfr_set_ui(tol.get(), 10, MPFR_RNDN);
  mpfr_pow_si(tol.get(), tol.get(), -digits, MPFR_RNDN);
  mpfr_sub(d.get(), x.re.get(), y.re.get(), MPFR_RNDN);
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  if (mpfr_cmp(d.get(), tol.get()) >= 0) return false;
  mpfr_sub(d.get(), x.im.get(), y.im.get(), MPFR_RNDN);
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  return mpfr_cmp(d.get(), tol.get()) < 0;
}

inline ComplexApprox complex_mul(const ComplexApprox& x, const ComplexApprox& y) {
  const mpfr_prec_t p = mpfr_get_prec(x.re.get());
  ComplexApprox r{BigFloat(p), BigFloat(p)};
  BigFloat t(p);
  mpfr_mul(r.re.get(), x.re.get(), y.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), x.im.get(), y.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
  mpfr_mul(r.im.get(), x.re.get(), y.im.get(), MPFR_RNDN);
  mpfr_mul(t.get(), x.im.get(), y.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
  return r;
}

}  // namespace nashe8
