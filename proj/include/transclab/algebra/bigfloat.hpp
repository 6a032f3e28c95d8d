#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace transclab::algebra {

/// Owning wrapper around mpfr_t. Operations take an explicit rounding mode so
/// that interval code can round each endpoint outward.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 64) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

  /// Fixed-point decimal rendering with `digits` fractional digits.
  std::string to_fixed(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] with outward-rounded endpoints.
struct Interval {
  BigFloat lo;
  BigFloat hi;

  explicit Interval(mpfr_prec_t bits) : lo(bits), hi(bits) {}

  static Interval exact_integer(const mpz_class& z, mpfr_prec_t bits) {
    Interval r(bits);
    mpfr_set_z(r.lo.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  static Interval rational(const mpq_class& q, mpfr_prec_t bits) {
    Interval r(bits);
    mpfr_set_q(r.lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  /// d-th root of a positive integer.
  static Interval root(const mpz_class& m, unsigned d, mpfr_prec_t bits) {
    Interval r = exact_integer(m, bits);
    mpfr_rootn_ui(r.lo.get(), r.lo.get(), d, MPFR_RNDD);
    mpfr_rootn_ui(r.hi.get(), r.hi.get(), d, MPFR_RNDU);
    return r;
  }

  static Interval pi(mpfr_prec_t bits) {
    Interval r(bits);
    mpfr_const_pi(r.lo.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi.get(), MPFR_RNDU);
    return r;
  }

  Interval& operator+=(const Interval& b) {
    mpfr_add(lo.get(), lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), b.hi.get(), MPFR_RNDU);
    return *this;
  }

  Interval& operator-=(const Interval& b) {
    BigFloat nlo(lo.bits());
    mpfr_sub(nlo.get(), lo.get(), b.hi.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), hi.get(), b.lo.get(), MPFR_RNDU);
    lo = std::move(nlo);
    return *this;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t bits = std::max(a.lo.bits(), b.lo.bits());
    Interval r(bits);
    const mpfr_srcptr as[2] = {a.lo.get(), a.hi.get()};
    const mpfr_srcptr bs[2] = {b.lo.get(), b.hi.get()};
    BigFloat t(bits);
    bool first = true;
    for (auto x : as)
      for (auto y : bs) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t.get(), r.lo.get())) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t.get(), r.hi.get())) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    return r;
  }

  /// Division by an interval not containing 0.
  friend Interval operator/(const Interval& a, const Interval& b) {
    const mpfr_prec_t bits = std::max(a.lo.bits(), b.lo.bits());
    Interval inv(bits);
    mpfr_ui_div(inv.lo.get(), 1, b.hi.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi.get(), 1, b.lo.get(), MPFR_RNDU);
    return a * inv;
  }

  /// Half-width, rounded up to a double.
  double radius_upper() const {
    BigFloat w(lo.bits());
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    mpfr_div_2ui(w.get(), w.get(), 1, MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
  }

  BigFloat midpoint() const {
    BigFloat m(lo.bits() + 2);
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
  }

  /// Upper bound on |x - mid| for every x in the interval.
  double radius_about(const BigFloat& mid) const {
    BigFloat a(lo.bits() + 2), b(lo.bits() + 2);
    mpfr_sub(a.get(), hi.get(), mid.get(), MPFR_RNDU);
    mpfr_sub(b.get(), mid.get(), lo.get(), MPFR_RNDU);
    mpfr_max(a.get(), a.get(), b.get(), MPFR_RNDU);
    return std::max(0.0, mpfr_get_d(a.get(), MPFR_RNDU));
  }

  /// Upper bound on |x - v| over the interval for a double v.
  double radius_about(double v) const {
    BigFloat m(lo.bits() + 64);
    mpfr_set_d(m.get(), v, MPFR_RNDN);
    return radius_about(m);
  }
};

/// Bits needed for an absolute error of 10^{-digits} on numbers of size ~2^magnitude_bits.
inline mpfr_prec_t bits_for_digits(int digits, long magnitude_bits = 0) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.32192809489)) + std::max(0L, magnitude_bits) + 32;
}

}  // namespace transclab::algebra
