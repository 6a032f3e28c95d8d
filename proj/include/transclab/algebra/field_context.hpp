#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "transclab/error.hpp"

namespace transclab::algebra {

/// The field Q(p_1^{1/d}, ..., p_n^{1/d}) for distinct primes p_k.
///
/// Its d^n monomials phi(j) = (prod_k p_k^{j_k})^{1/d}, j in Z_d^n, form a
/// Q-basis (Besicovitch). Every RadicalElement is a coordinate vector over this
/// basis; equality and Q-rank reduce to coordinate linear algebra. That basis
/// theorem is the single soundness assumption of the exact layer.
class FieldContext {
 public:
  FieldContext(std::vector<mpz_class> primes, unsigned d) : primes_(std::move(primes)), d_(d) {
    if (d_ < 1) throw DomainError("root order d must be >= 1");
    std::set<mpz_class> seen;
    for (const auto& p : primes_) {
      if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw DomainError("not a prime: " + p.get_str());
      if (!seen.insert(p).second) throw DomainError("primes must be distinct: " + p.get_str());
    }
  }

  /// Context on the first n primes 2, 3, 5, ...
  static FieldContext first_primes(std::size_t n, unsigned d) {
    std::vector<mpz_class> ps;
    mpz_class p = 2;
    while (ps.size() < n) {
      ps.push_back(p);
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    return FieldContext(std::move(ps), d);
  }

  const std::vector<mpz_class>& primes() const { return primes_; }
  unsigned d() const { return d_; }
  std::size_t n() const { return primes_.size(); }

  /// d^n, the dimension of the field over Q.
  mpz_class basis_size() const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), d_, n());
    return r;
  }

  /// d^n as a machine integer; throws CapExceeded when it does not fit in 63 bits.
  std::uint64_t basis_size_u64() const {
    mpz_class r = basis_size();
    if (mpz_sizeinbase(r.get_mpz_t(), 2) > 63) throw CapExceeded("basis size d^n does not fit in 63 bits");
    return static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
  }

  friend bool operator==(const FieldContext& a, const FieldContext& b) {
    return a.d_ == b.d_ && a.primes_ == b.primes_;
  }

  std::string describe() const {
    std::string s = "Q(";
    for (std::size_t k = 0; k < primes_.size(); ++k) {
      if (k) s += ", ";
      s += primes_[k].get_str() + "^(1/" + std::to_string(d_) + ")";
    }
    return s + ")";
  }

 private:
  std::vector<mpz_class> primes_;
  unsigned d_;
};

using ContextPtr = std::shared_ptr<const FieldContext>;

inline ContextPtr make_context(std::vector<mpz_class> primes, unsigned d) {
  return std::make_shared<const FieldContext>(std::move(primes), d);
}

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace transclab::algebra
