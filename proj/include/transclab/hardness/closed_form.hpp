#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "transclab/error.hpp"

namespace transclab::hardness {

/// A quantity that may underflow, carried with its base-10 logarithm.
struct LogValue {
  double value = 0;
  double log10 = -std::numeric_limits<double>::infinity();

  static LogValue from_log10(double l) { return {std::pow(10.0, l), l}; }
  static LogValue from_ln(double l) { return from_log10(l / std::numbers::ln10); }
};

struct HardnessQuery {
  unsigned d = 2;
  unsigned n = 2;
  unsigned k = 1;  // gate-set cardinality
  double epsilon = 0;

  /// d^n as a double (infinite when it overflows).
  double dimension() const { return std::pow(static_cast<double>(d), static_cast<double>(n)); }

  void validate() const {
    if (d < 2) throw DomainError("hardness bounds need d >= 2");
    if (n < 2) throw DomainError("hardness bounds need n >= 2");
    if (k < 1) throw DomainError("gate-set cardinality k must be >= 1");
    if (!(epsilon >= 0)) throw DomainError("epsilon must be >= 0");
  }
};

/// base^D in log space; base in [0, 1].
inline LogValue power_of_dimension(double base, double dimension) {
  if (base == 0) return {0.0, -std::numeric_limits<double>::infinity()};
  return LogValue::from_log10(dimension * std::log10(base));
}

struct DiagonalBound {
  double g = 0;              // circuit size below which the bound applies
  LogValue measure_bound;    // (arcsin(eps/2))^{d^n}
};

/// Haar measure of diagonal unitaries eps-approximable with g = (ln(pi/2)/(2k)) d^n / ln n gates.
inline DiagonalBound diagonal_bound(const HardnessQuery& q) {
  q.validate();
  if (q.epsilon >= 1) throw DomainError("diagonal_bound needs epsilon in [0, 1)");
  const double D = q.dimension();
  DiagonalBound out;
  out.g = (std::log(std::numbers::pi / 2) / (2.0 * q.k)) * D / std::log(static_cast<double>(q.n));
  out.measure_bound = power_of_dimension(std::asin(q.epsilon / 2), D);
  return out;
}

/// Fraction of +-1 diagonal unitaries within reach of the same circuits: (pi/4)^{d^n}.
inline LogValue sign_diagonal_bound(const HardnessQuery& q) {
  q.validate();
  if (q.epsilon >= 1) throw DomainError("sign_diagonal_bound needs epsilon < 1");
  return power_of_dimension(std::numbers::pi / 4, q.dimension());
}

struct CoherentBound {
  double g_cap = 0;                  // d^n / (16 k ln n)
  LogValue bound;                    // 4e exp(-d^n / 16), eps in [0, 1]
  std::optional<LogValue> sign_bound;  // 2 exp(-d^n / 8), only for eps in [0, 3/4]
};

inline LogValue coherent_sign_bound(const HardnessQuery& q) {
  q.validate();
  if (q.epsilon > 0.75) throw DomainError("the +-1 coherent-state bound needs epsilon in [0, 3/4]");
  return LogValue::from_ln(std::log(2.0) - q.dimension() / 8);
}

inline CoherentBound coherent_bound(const HardnessQuery& q) {
  q.validate();
  if (q.epsilon > 1) throw DomainError("coherent_bound needs epsilon in [0, 1]");
  const double D = q.dimension();
  CoherentBound out;
  out.g_cap = D / (16.0 * q.k * std::log(static_cast<double>(q.n)));
  out.bound = LogValue::from_ln(std::log(4.0) + 1.0 - D / 16);
  if (q.epsilon <= 0.75) out.sign_bound = coherent_sign_bound(q);
  return out;
}

struct SteinhausTail {
  LogValue bound;          // D tau^2 exp(1 - D tau^2), tau = 1 - eps^2 / 2
  LogValue quarter_form;   // (D/4) e^{1 - D/4}
  LogValue final_form;     // 4 exp(1 - 3D/16)
};

/// Hoeffding-type tail P[|<phi, psi>| >= 1 - eps^2/2] for Steinhaus psi, and the
/// two weakened forms used on the way to the coherent-state bound.
inline SteinhausTail steinhaus_tail(double D, double epsilon) {
  if (D < 1) throw DomainError("steinhaus_tail needs D >= 1");
  if (!(epsilon >= 0 && epsilon <= 1)) throw DomainError("steinhaus_tail needs epsilon in [0, 1]");
  const double tau = 1 - epsilon * epsilon / 2;
  const double x = D * tau * tau;
  SteinhausTail out;
  out.bound = LogValue::from_ln(std::log(x) + 1 - x);
  out.quarter_form = LogValue::from_ln(std::log(D / 4) + 1 - D / 4);
  out.final_form = LogValue::from_ln(std::log(4.0) + 1 - 3 * D / 16);
  return out;
}

/// Rademacher analogue: P[|sum_j a_j s_j| >= u ||a||_2] <= 2 exp(-u^2 / 2) with
/// u = tau sqrt(D), i.e. 2 exp(-D tau^2 / 2).
inline LogValue rademacher_tail(double D, double epsilon) {
  if (D < 1) throw DomainError("rademacher_tail needs D >= 1");
  if (!(epsilon >= 0 && epsilon <= 1)) throw DomainError("rademacher_tail needs epsilon in [0, 1]");
  const double tau = 1 - epsilon * epsilon / 2;
  return LogValue::from_ln(std::log(2.0) - D * tau * tau / 2);
}

}  // namespace transclab::hardness
