#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "transclab/error.hpp"

namespace transclab::algebra {

inline constexpr std::uint64_t default_factor_bound = 1'000'000;

struct Factorization {
  std::vector<std::pair<mpz_class, unsigned>> factors;  // prime, multiplicity
};

/// Trial-division factorization of m > 1 with primes up to `bound`.
/// A cofactor left above bound^2 is accepted only if GMP proves it prime;
/// so is the square of a proven prime; otherwise the result is Indeterminate.
inline Factorization factor_trial(const mpz_class& m, std::uint64_t bound = default_factor_bound) {
  if (m <= 1) throw DomainError("factorization needs m > 1, got " + m.get_str());
  Factorization f;
  mpz_class rest = m;
  auto strip = [&](const mpz_class& p) {
    unsigned mult = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
      ++mult;
    }
    if (mult) f.factors.emplace_back(p, mult);
  };
  strip(2);
  for (std::uint64_t p = 3; p <= bound; p += 2) {
    mpz_class pz(static_cast<unsigned long>(p));
    if (pz * pz > rest) break;
    strip(pz);
  }
  if (rest > 1) {
    mpz_class b(static_cast<unsigned long>(bound));
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
    if (rest <= b * b || mpz_probab_prime_p(rest.get_mpz_t(), 30) == 2) {
      f.factors.emplace_back(rest, 1);
    } else if (root * root == rest && mpz_probab_prime_p(root.get_mpz_t(), 30) == 2) {
      f.factors.emplace_back(root, 2);
    } else {
      throw Indeterminate("cofactor " + rest.get_str() + " of " + m.get_str() +
                          " exceeds the trial-division bound");
    }
  }
  return f;
}

inline bool is_square_free(const mpz_class& m, std::uint64_t bound = default_factor_bound) {
  for (const auto& [p, e] : factor_trial(m, bound).factors)
    if (e > 1) return false;
  return true;
}

/// Eisenstein's criterion for sum_i coeffs[i] x^i at prime p.
inline bool eisenstein_applies(const std::vector<mpz_class>& coeffs, const mpz_class& p) {
  if (coeffs.size() < 2) return false;
  auto divides = [](const mpz_class& q, const mpz_class& a) { return mpz_divisible_p(a.get_mpz_t(), q.get_mpz_t()) != 0; };
  if (divides(p, coeffs.back())) return false;
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
    if (!divides(p, coeffs[i])) return false;
  return !divides(p * p, coeffs.front());
}

/// Degree of m^{1/d} over Q for square-free m > 1, certified by Eisenstein
/// applied to x^d - m at the smallest prime factor of m.
inline unsigned root_degree(const mpz_class& m, unsigned d, std::uint64_t bound = default_factor_bound) {
  if (m <= 1) throw DomainError("root_degree needs m > 1, got " + m.get_str());
  if (d < 2) throw DomainError("root_degree needs d >= 2");
  auto f = factor_trial(m, bound);
  for (const auto& [p, e] : f.factors)
    if (e > 1)
      throw DomainError(m.get_str() + " is not square-free (" + p.get_str() + "^" + std::to_string(e) + " divides it)");
  std::vector<mpz_class> coeffs(d + 1, 0);
  coeffs.front() = -m;
  coeffs.back() = 1;
  const mpz_class& p = f.factors.front().first;
  if (!eisenstein_applies(coeffs, p)) throw Indeterminate("Eisenstein criterion failed unexpectedly");
  return d;
}

}  // namespace transclab::algebra
