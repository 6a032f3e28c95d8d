#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "transclab/algebra/bigfloat.hpp"
#include "transclab/algebra/evaluate.hpp"
#include "transclab/error.hpp"
#include "transclab/families/family_spec.hpp"
#include "transclab/parallel.hpp"

namespace transclab::equidist {

using algebra::BigFloat;
using algebra::Interval;
using families::FamilySpec;
using u128 = unsigned __int128;

/// Caps the number of coordinates a Weyl sequence may carry.
inline constexpr std::uint64_t max_weyl_dimension = 1u << 12;

/// Points t * theta mod 1, t = 1..N, theta_j = phi(j) / (2 pi).
///
/// frac(theta_j) is held as a 128-bit fixed-point fraction, so t * theta mod 1
/// is a wrapping integer multiply. The only error is the enclosure of theta
/// (amplified by t) and the final rounding to float64.
struct WeylSequence {
  FamilySpec spec;
  std::size_t dim = 0;
  std::uint64_t count = 0;
  int precision = 0;
  std::vector<double> theta;      // phi(j) / (2 pi), rounded
  std::vector<u128> theta_frac;   // frac(theta_j) * 2^128
  double theta_error = 0;         // bound on |theta_frac / 2^128 - frac(theta_j)|
  double point_error = 0;         // bound on the error of any stored coordinate
  std::vector<double> points;     // count x dim, row t-1 holds t * theta mod 1

  double at(std::uint64_t row, std::size_t j) const { return points[row * dim + j]; }
  std::vector<double> row(std::uint64_t r) const {
    return std::vector<double>(points.begin() + r * dim, points.begin() + (r + 1) * dim);
  }
};

/// Precision that keeps 10 correct fractional digits after multiplying by N, plus guard digits.
inline int default_weyl_precision(std::uint64_t N) {
  return static_cast<int>(std::to_string(N).size()) + 12;
}

inline u128 fixed_from_mpz(const mpz_class& z) {
  mpz_class lo_part = z & mpz_class("18446744073709551615");
  mpz_class hi_part = z >> 64;
  return (static_cast<u128>(mpz_get_ui(hi_part.get_mpz_t())) << 64) | mpz_get_ui(lo_part.get_mpz_t());
}

/// Coordinate in [0, 1) from a 128-bit fraction: keep 53 bits, never round up to 1.
inline double fixed_to_double(u128 x) { return static_cast<double>(static_cast<std::uint64_t>(x >> 75)) * 0x1.0p-53; }

inline WeylSequence weyl_points(const FamilySpec& spec, std::uint64_t N, int precision = 0, unsigned threads = 1) {
  if (N < 1) throw DomainError("weyl_points needs N >= 1");
  if (precision == 0) precision = default_weyl_precision(N);
  if (precision < 1 || precision > 36) throw DomainError("weyl precision must lie in [1, 36] digits");
  const double theta_target = std::pow(10.0, -precision);
  if (static_cast<double>(N) * theta_target > 1e-10)
    throw DomainError("precision shortfall: " + std::to_string(precision) + " digits leave fewer than 10 correct " +
                      "fractional digits at t = " + std::to_string(N) + " (need >= " +
                      std::to_string(default_weyl_precision(N) - 2) + ")");
  const std::uint64_t D = families::checked_table_size(spec, max_weyl_dimension);
  if (static_cast<double>(N) * static_cast<double>(D) > 5e8) throw CapExceeded("N * d^n exceeds the point-matrix cap 5e8");

  WeylSequence seq;
  seq.spec = spec;
  seq.dim = D;
  seq.count = N;
  seq.precision = precision;
  seq.theta.resize(D);
  seq.theta_frac.resize(D);

  double worst = 0;
  for (std::uint64_t i = 0; i < D; ++i) {
    auto j = families::index_to_exponent(i, spec.d(), spec.n());
    algebra::RadicalElement phi = algebra::RadicalElement::monomial(spec.context, j);
    mpfr_prec_t bits = std::max<mpfr_prec_t>(algebra::bits_for_digits(precision + 2, algebra::magnitude_bits(phi)), 200);
    bool done = false;
    for (int attempt = 0; attempt < 6 && !done; ++attempt, bits *= 2) {
      Interval two_pi = Interval::pi(bits) * Interval::exact_integer(2, bits);
      Interval th = algebra::enclose_monomial(phi, j, bits) / two_pi;
      BigFloat flo(bits), fhi(bits);
      mpfr_floor(flo.get(), th.lo.get());
      mpfr_floor(fhi.get(), th.hi.get());
      if (!mpfr_equal_p(flo.get(), fhi.get())) continue;
      Interval frac = th;
      Interval whole(bits);
      mpfr_set(whole.lo.get(), flo.get(), MPFR_RNDD);
      mpfr_set(whole.hi.get(), flo.get(), MPFR_RNDU);
      frac -= whole;
      BigFloat mid = frac.midpoint();
      double rad = frac.radius_about(mid);
      if (rad > theta_target) continue;
      BigFloat scaled(mid.bits() + 130);
      mpfr_mul_2ui(scaled.get(), mid.get(), 128, MPFR_RNDN);
      mpz_class z;
      mpfr_get_z(z.get_mpz_t(), scaled.get(), MPFR_RNDN);
      if (z < 0) z = 0;
      mpz_class two128 = mpz_class(1) << 128;
      if (z >= two128) z = two128 - 1;
      seq.theta_frac[i] = fixed_from_mpz(z);
      seq.theta[i] = th.midpoint().to_double();
      worst = std::max(worst, rad + 0x1.0p-128);
      done = true;
    }
    if (!done) throw CapExceeded("could not enclose theta_j to the requested precision");
  }
  if (std::set<u128>(seq.theta_frac.begin(), seq.theta_frac.end()).size() != D)
    throw Error("theta components are not pairwise distinct");
  seq.theta_error = worst;
  seq.point_error = static_cast<double>(N) * worst + 0x1.0p-53;

  seq.points.resize(N * D);
  constexpr std::uint64_t block = 1u << 14;
  parallel_for((N + block - 1) / block, threads, [&](std::size_t b) {
    const std::uint64_t begin = b * block, end = std::min(N, begin + block);
    for (std::size_t j = 0; j < D; ++j) {
      const u128 f = seq.theta_frac[j];
      u128 x = f * static_cast<u128>(begin + 1);  // wraps mod 2^128
      for (std::uint64_t t = begin; t < end; ++t, x += f) seq.points[t * D + j] = fixed_to_double(x);
    }
  });
  return seq;
}

}  // namespace transclab::equidist
