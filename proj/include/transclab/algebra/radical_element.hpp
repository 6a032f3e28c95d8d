#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transclab/algebra/field_context.hpp"
#include "transclab/error.hpp"

namespace transclab::algebra {

/// Exponent tuple j in Z_d^n; component k is the exponent of p_k^{1/d}.
using Exponent = std::vector<unsigned>;

/// Exact element sum_j c_j phi(j) of Q(p_1^{1/d}, ..., p_n^{1/d}).
///
/// Coordinates are kept sparse and canonical: zero coefficients are never
/// stored, so two elements are equal iff their coordinate maps are equal.
class RadicalElement {
 public:
  using Coords = std::map<Exponent, mpq_class>;

  explicit RadicalElement(ContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw DomainError("null field context");
  }

  RadicalElement(ContextPtr ctx, Coords coords) : RadicalElement(std::move(ctx)) {
    for (auto& [j, c] : coords) {
      check_exponent(j);
      c.canonicalize();
      if (c != 0) coords_.emplace(j, c);
    }
  }

  static RadicalElement zero(ContextPtr ctx) { return RadicalElement(std::move(ctx)); }

  static RadicalElement rational(ContextPtr ctx, const mpq_class& q) {
    RadicalElement r(std::move(ctx));
    if (q != 0) r.coords_.emplace(Exponent(r.ctx_->n(), 0u), q);
    return r;
  }

  static RadicalElement one(ContextPtr ctx) { return rational(std::move(ctx), 1); }

  /// c * phi(j).
  static RadicalElement monomial(ContextPtr ctx, Exponent j, const mpq_class& c = 1) {
    RadicalElement r(std::move(ctx));
    r.check_exponent(j);
    if (c != 0) r.coords_.emplace(std::move(j), c);
    return r;
  }

  const ContextPtr& context() const { return ctx_; }
  const Coords& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  /// The rational value if the element lies in Q.
  std::optional<mpq_class> as_rational() const {
    if (coords_.empty()) return mpq_class(0);
    if (coords_.size() == 1) {
      const auto& [j, c] = *coords_.begin();
      for (unsigned e : j)
        if (e != 0) return std::nullopt;
      return c;
    }
    return std::nullopt;
  }

  /// Coefficient of phi(j); zero when absent.
  mpq_class coefficient(const Exponent& j) const {
    auto it = coords_.find(j);
    return it == coords_.end() ? mpq_class(0) : it->second;
  }

  RadicalElement& operator+=(const RadicalElement& b) {
    require_same(b);
    for (const auto& [j, c] : b.coords_) accumulate(j, c);
    return *this;
  }

  RadicalElement& operator-=(const RadicalElement& b) {
    require_same(b);
    for (const auto& [j, c] : b.coords_) accumulate(j, -c);
    return *this;
  }

  RadicalElement& operator*=(const mpq_class& q) {
    if (q == 0) {
      coords_.clear();
    } else {
      for (auto& [j, c] : coords_) c *= q;
    }
    return *this;
  }

  friend RadicalElement operator+(RadicalElement a, const RadicalElement& b) { return a += b; }
  friend RadicalElement operator-(RadicalElement a, const RadicalElement& b) { return a -= b; }
  friend RadicalElement operator-(RadicalElement a) { return a *= mpq_class(-1); }
  friend RadicalElement operator*(RadicalElement a, const mpq_class& q) { return a *= q; }
  friend RadicalElement operator*(const mpq_class& q, RadicalElement a) { return a *= q; }

  /// Product with the reduction rule p_k^{(d q + r)/d} = p_k^q * p_k^{r/d}.
  friend RadicalElement operator*(const RadicalElement& a, const RadicalElement& b) {
    a.require_same(b);
    const auto& primes = a.ctx_->primes();
    const unsigned d = a.ctx_->d();
    RadicalElement out(a.ctx_);
    Exponent j(a.ctx_->n());
    for (const auto& [ja, ca] : a.coords_) {
      for (const auto& [jb, cb] : b.coords_) {
        mpz_class carry = 1;
        for (std::size_t k = 0; k < j.size(); ++k) {
          unsigned s = ja[k] + jb[k];
          if (s >= d) {
            carry *= primes[k];
            s -= d;
          }
          j[k] = s;
        }
        out.accumulate(j, ca * cb * carry);
      }
    }
    return out;
  }

  RadicalElement& operator*=(const RadicalElement& b) { return *this = *this * b; }

  friend bool operator==(const RadicalElement& a, const RadicalElement& b) {
    return same_context(a.ctx_, b.ctx_) && a.coords_ == b.coords_;
  }

  /// Human-readable form, e.g. "3 - 2*2^(1/2)".
  std::string to_string() const {
    if (coords_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [j, c] : coords_) {
      mpq_class mag = abs(c);
      if (first) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      first = false;
      mpz_class radicand = radicand_of(j);
      if (radicand == 1) {
        s += mag.get_str();
      } else {
        if (mag != 1) s += mag.get_str() + "*";
        s += radicand.get_str() + "^(1/" + std::to_string(ctx_->d()) + ")";
      }
    }
    return s;
  }

  /// prod_k p_k^{j_k}; phi(j) is its d-th root.
  mpz_class radicand_of(const Exponent& j) const {
    mpz_class m = 1;
    for (std::size_t k = 0; k < j.size(); ++k) {
      mpz_class pk;
      mpz_pow_ui(pk.get_mpz_t(), ctx_->primes()[k].get_mpz_t(), j[k]);
      m *= pk;
    }
    return m;
  }

 private:
  void check_exponent(const Exponent& j) const {
    if (j.size() != ctx_->n()) throw DomainError("exponent tuple has wrong length");
    for (unsigned e : j)
      if (e >= ctx_->d()) throw DomainError("exponent component outside {0, ..., d-1}");
  }

  void require_same(const RadicalElement& b) const {
    if (!same_context(ctx_, b.ctx_)) throw ContextMismatch();
  }

  void accumulate(const Exponent& j, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = coords_.try_emplace(j, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coords_.erase(it);
    }
  }

  ContextPtr ctx_;
  Coords coords_;
};

}  // namespace transclab::algebra
