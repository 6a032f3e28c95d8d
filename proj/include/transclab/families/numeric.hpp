#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "transclab/algebra/bigfloat.hpp"
#include "transclab/algebra/evaluate.hpp"
#include "transclab/error.hpp"
#include "transclab/families/family_spec.hpp"
#include "transclab/parallel.hpp"

namespace transclab::families {

using algebra::BigFloat;
using algebra::Interval;

/// Largest decimal precision a float64 phase can honour.
inline constexpr int max_float64_digits = 15;

/// Reduces x modulo `period` into [0, period). Returns nullopt when the
/// enclosures are too wide to decide the integer quotient.
inline std::optional<Interval> reduce_mod(const Interval& x, const Interval& period) {
  const mpfr_prec_t bits = x.lo.bits();
  Interval q = x / period;
  mpz_class klo, khi;
  BigFloat f(bits);
  mpfr_floor(f.get(), q.lo.get());
  mpfr_get_z(klo.get_mpz_t(), f.get(), MPFR_RNDN);
  mpfr_floor(f.get(), q.hi.get());
  mpfr_get_z(khi.get_mpz_t(), f.get(), MPFR_RNDN);
  if (klo != khi) return std::nullopt;
  Interval r = x;
  r -= Interval::exact_integer(klo, bits) * period;
  return r;
}

/// Enclosure of t * phi(j).
inline Interval enclose_scaled_phase(const FamilySpec& spec, const Exponent& j, mpfr_prec_t bits) {
  RadicalElement phi = RadicalElement::monomial(spec.context, j);
  return Interval::rational(spec.t, bits) * algebra::enclose_monomial(phi, j, bits);
}

/// Binary size of |t| * max_j phi(j).
inline long scaled_magnitude_bits(const FamilySpec& spec) {
  long bits = static_cast<long>(mpz_sizeinbase(spec.t.get_num_mpz_t(), 2)) + 1;
  double log2_max = 0;
  for (const auto& p : spec.context->primes()) log2_max += std::log2(p.get_d()) * (spec.d() - 1) / spec.d();
  return bits + static_cast<long>(std::ceil(log2_max)) + 1;
}

struct PhaseValue {
  double alpha = 0;  // in [0, 2 pi)
  double error = 0;  // rigorous bound on |alpha - true reduced phase|
};

/// t phi(j) mod 2 pi as a float64 with rigorous error <= 10^{-precision}.
inline PhaseValue reduced_phase(const FamilySpec& spec, const Exponent& j, int precision) {
  if (spec.t == 0) return {0.0, 0.0};
  const double target = std::pow(10.0, -precision);
  mpfr_prec_t bits = algebra::bits_for_digits(precision + 4, scaled_magnitude_bits(spec));
  for (int attempt = 0; attempt < 8; ++attempt, bits *= 2) {
    Interval two_pi = Interval::pi(bits) * Interval::exact_integer(2, bits);
    Interval x = enclose_scaled_phase(spec, j, bits);
    auto r = reduce_mod(x, two_pi);
    if (!r) continue;
    BigFloat mid = r->midpoint();
    double alpha = mid.to_double();
    if (alpha < 0) alpha = 0;
    double err = r->radius_about(alpha);
    if (err <= target) return {alpha, err};
  }
  throw CapExceeded("phase precision unreachable within working-precision limit");
}

inline void check_precision(int precision) {
  if (precision < 1) throw DomainError("precision must be >= 1");
  if (precision > max_float64_digits)
    throw CapExceeded("precision " + std::to_string(precision) + " exceeds what float64 phases can carry (" +
                      std::to_string(max_float64_digits) + " digits)");
}

struct DiagonalUnitary {
  FamilySpec spec;
  int precision = 0;
  std::vector<double> phases;  // alpha_j
  std::vector<double> errors;  // per-entry bound on |alpha_j - true|

  std::size_t dim() const { return phases.size(); }
  std::complex<double> entry(std::size_t j) const { return std::polar(1.0, phases[j]); }
  double max_error() const {
    double m = 0;
    for (double e : errors) m = std::max(m, e);
    return m;
  }
};

struct StateVector {
  FamilySpec spec;
  int precision = 0;
  std::vector<std::complex<double>> amplitudes;
  double error_bound = 0;  // bound on max_j |amplitude_j - true amplitude_j|

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const {
    long double s = 0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return static_cast<double>(std::sqrt(s));
  }
};

inline DiagonalUnitary build_diagonal_unitary(const FamilySpec& spec, int precision, unsigned threads = 1,
                                              std::uint64_t cap = default_table_cap) {
  if (spec.t < 0) throw DomainError("family parameter t must be >= 0");
  check_precision(precision);
  const std::uint64_t size = checked_table_size(spec, cap);
  DiagonalUnitary u{spec, precision, std::vector<double>(size), std::vector<double>(size)};
  constexpr std::uint64_t block = 256;
  parallel_for((size + block - 1) / block, threads, [&](std::size_t b) {
    for (std::uint64_t i = b * block; i < std::min<std::uint64_t>(size, (b + 1) * block); ++i) {
      auto p = reduced_phase(spec, index_to_exponent(i, spec.d(), spec.n()), precision);
      u.phases[i] = p.alpha;
      u.errors[i] = p.error;
    }
  });
  return u;
}

/// psi_t = d^{-n/2} sum_j e^{i alpha_j} |j>.
inline StateVector build_coherent_state(const FamilySpec& spec, int precision, unsigned threads = 1,
                                        std::uint64_t cap = default_table_cap) {
  DiagonalUnitary u = build_diagonal_unitary(spec, precision, threads, cap);
  StateVector s{spec, precision, std::vector<std::complex<double>>(u.dim()), 0.0};
  const double scale = 1.0 / std::sqrt(static_cast<double>(u.dim()));
  for (std::size_t j = 0; j < u.dim(); ++j) s.amplitudes[j] = std::polar(scale, u.phases[j]);
  // |e^{ia} - e^{ib}| <= |a - b|; libm cos/sin and the scale add a few ulps.
  s.error_bound = scale * (u.max_error() + 8 * 0x1.0p-53);
  if (std::abs(s.norm() - 1.0) > 1e-9) throw Error("coherent state norm drifted beyond 1e-9");
  return s;
}

}  // namespace transclab::families
