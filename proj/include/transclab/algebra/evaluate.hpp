#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <string>

#include "transclab/algebra/bigfloat.hpp"
#include "transclab/algebra/radical_element.hpp"
#include "transclab/error.hpp"

namespace transclab::algebra {

/// A real value with a rigorous absolute error bound: |true - value| <= radius.
struct RealEnclosure {
  BigFloat value;
  double radius = 0.0;
  int precision = 0;  // requested decimal digits

  double to_double() const { return value.to_double(); }

  /// Decimal string with `precision` fractional digits. The string itself is
  /// within 10^{-precision} of the true value (rounding included).
  std::string to_decimal() const { return value.to_fixed(precision); }
};

/// Enclosure of phi(j) = radicand^{1/d}.
inline Interval enclose_monomial(const RadicalElement& a, const Exponent& j, mpfr_prec_t bits) {
  mpz_class m = a.radicand_of(j);
  if (m == 1) return Interval::exact_integer(1, bits);
  return Interval::root(m, a.context()->d(), bits);
}

/// Interval enclosure of a at the given working precision.
inline Interval enclose(const RadicalElement& a, mpfr_prec_t bits) {
  Interval sum = Interval::exact_integer(0, bits);
  for (const auto& [j, c] : a.coords()) sum += Interval::rational(c, bits) * enclose_monomial(a, j, bits);
  return sum;
}

/// Binary magnitude estimate used to size guard bits.
inline long magnitude_bits(const RadicalElement& a) {
  long mag = 0;
  for (const auto& [j, c] : a.coords()) {
    long nb = static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2));
    long rb = static_cast<long>(mpz_sizeinbase(a.radicand_of(j).get_mpz_t(), 2)) / a.context()->d() + 1;
    mag = std::max(mag, nb + rb);
  }
  return mag + static_cast<long>(std::log2(static_cast<double>(a.coords().size() + 1))) + 1;
}

/// Evaluates a to `precision` decimal digits. Working precision doubles until
/// the enclosure is narrow enough that value plus decimal rounding stays within
/// 10^{-precision} of the true number.
inline RealEnclosure evaluate(const RadicalElement& a, int precision) {
  if (precision < 1) throw DomainError("precision must be >= 1 decimal digit");
  if (precision > 300) throw CapExceeded("precision above 300 digits is not supported");
  RealEnclosure out;
  out.precision = precision;
  if (a.is_zero()) {
    out.value = BigFloat(64);
    out.radius = 0.0;
    return out;
  }
  // Target radius 10^{-precision}/4 leaves room for the printed rounding (1/2 ulp).
  const double target = std::pow(10.0, -precision) / 4.0;
  mpfr_prec_t bits = bits_for_digits(precision + 1, magnitude_bits(a));
  for (int attempt = 0; attempt < 12; ++attempt, bits *= 2) {
    Interval iv = enclose(a, bits);
    BigFloat mid = iv.midpoint();
    double r = iv.radius_about(mid);
    if (r <= target) {
      out.value = std::move(mid);
      out.radius = r;
      return out;
    }
  }
  throw CapExceeded("precision unreachable within working-precision limit");
}

}  // namespace transclab::algebra
