#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "transclab/algebra/radical_element.hpp"
#include "transclab/algebra/rank.hpp"
#include "transclab/algebra/root_degree.hpp"
#include "transclab/error.hpp"
#include "transclab/gamma/gamma_value.hpp"

namespace transclab::gamma {

using algebra::RadicalElement;

inline mpz_class pow_ui(unsigned base, unsigned long exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Exact gamma of {e^{t alpha} : alpha in exponents} for algebraic exponents
/// and nonzero rational t.
///
/// Lindemann-Weierstrass lifts Q-linear independence of algebraic exponents to
/// algebraic independence of their exponentials, and any Q-linear relation
/// makes the exponentials multiplicatively dependent; so gamma equals the
/// Q-dimension of the exponent span, which scaling by t != 0 preserves. An
/// imaginary unit in front of t (e^{i t alpha}) changes nothing since i t is
/// again a nonzero algebraic scale.
inline GammaValue gamma_exponential_set(std::span<const RadicalElement> exponents, const mpq_class& t) {
  if (exponents.empty()) throw DomainError("exponent set must be nonempty");
  if (t == 0) throw DomainError("t = 0 makes every exponential equal to 1");
  std::size_t r = algebra::rank_over_q(exponents);
  GammaValue g;
  g.kind = GammaKind::exact;
  g.value = static_cast<unsigned long>(r);
  const auto& ctx = *exponents.front().context();
  g.provenance.push_back({rule::besicovitch, "coordinates over the monomial basis of " + ctx.describe() + " are faithful"});
  g.provenance.push_back({rule::rank, "dim_Q span of " + std::to_string(exponents.size()) + " exponents = " + std::to_string(r)});
  g.provenance.push_back({rule::lindemann_weierstrass, "scale t = " + t.get_str() + " != 0; gamma(exp of span) = dim_Q span"});
  return g;
}

/// Describes the algebraic base alpha of a power tower.
using AlphaDesc = std::variant<mpq_class, RadicalElement>;

/// Lower bound ceil(d/2) on gamma({alpha^{m^{k/d}}}_{k=1}^{d-1}) for algebraic
/// alpha not in {0, 1} and square-free m > 1.
inline GammaValue gamma_power_tower(const AlphaDesc& alpha, const mpz_class& m, unsigned d,
                                    std::uint64_t factor_bound = algebra::default_factor_bound) {
  std::string alpha_str;
  bool degenerate = std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, mpq_class>) {
          alpha_str = v.get_str();
          return v == 0 || v == 1;
        } else {
          alpha_str = v.to_string();
          auto q = v.as_rational();
          return q && (*q == 0 || *q == 1);
        }
      },
      alpha);
  if (degenerate) throw DomainError("alpha must be algebraic and not in {0, 1}, got " + alpha_str);
  unsigned deg = algebra::root_degree(m, d, factor_bound);
  GammaValue g;
  g.kind = GammaKind::lower_bound;
  g.value = (deg + 1) / 2;
  g.provenance.push_back({rule::eisenstein, "x^" + std::to_string(d) + " - " + m.get_str() +
                                                " irreducible; deg m^(1/d) = " + std::to_string(deg)});
  g.provenance.push_back({rule::diaz_philippon, "alpha = " + alpha_str + ", beta = " + m.get_str() + "^(1/" +
                                                    std::to_string(d) + "): gamma >= d/2"});
  return g;
}

/// Subadditive upper bound for a product: gamma(AB) <= gamma(A) + gamma(B).
inline GammaValue gamma_combine(std::span<const GammaValue> parts) {
  GammaValue out;
  out.kind = GammaKind::upper_bound;
  out.value = 0;
  for (const auto& p : parts) {
    if (!p.bounds_from_above()) throw DomainError("a pure lower bound cannot enter an upper-bound sum");
    out.value += p.value;
  }
  for (const auto& p : parts)
    for (const auto& s : p.provenance) out.provenance.push_back(s);
  out.provenance.push_back({rule::subadditivity, "sum over " + std::to_string(parts.size()) + " factors = " + out.value.get_str()});
  return out;
}

/// gamma(V) <= (d^2)^2 for a two-qudit gate V in U(d^2).
inline GammaValue two_qudit_gate_cap(unsigned d) {
  return GammaValue::make(GammaKind::upper_bound, pow_ui(d, 4),
                          {{rule::unitary_cap, "two-qudit gate has (d^2)^2 = " + pow_ui(d, 4).get_str() + " entries"}});
}

/// ceil(gamma / d^4), a certified lower bound on the exact circuit complexity C_0.
inline mpz_class circuit_lower_bound(const GammaValue& g, unsigned d) {
  if (d < 2) throw DomainError("circuit_lower_bound needs d >= 2");
  if (!g.bounds_from_below()) throw DomainError("circuit_lower_bound needs an exact value or a lower bound");
  return ceil_div(g.value, pow_ui(d, 4));
}

}  // namespace transclab::gamma
