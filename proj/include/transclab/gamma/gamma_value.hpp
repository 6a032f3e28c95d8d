#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "transclab/algebra/serialize.hpp"

namespace transclab::gamma {

using json = nlohmann::json;

enum class GammaKind { exact, lower_bound, upper_bound };

inline const char* to_string(GammaKind k) {
  switch (k) {
    case GammaKind::exact: return "exact";
    case GammaKind::lower_bound: return "lower_bound";
    case GammaKind::upper_bound: return "upper_bound";
  }
  return "?";
}

/// Rules a derivation step may cite.
namespace rule {
inline constexpr const char* besicovitch = "besicovitch_basis";
inline constexpr const char* rank = "exact_rank_over_q";
inline constexpr const char* lindemann_weierstrass = "lindemann_weierstrass";
inline constexpr const char* exponential_span = "exponential_span_dimension";
inline constexpr const char* eisenstein = "eisenstein_root_degree";
inline constexpr const char* diaz_philippon = "diaz_philippon";
inline constexpr const char* subadditivity = "subadditivity";
inline constexpr const char* unitary_cap = "unitary_entry_cap";
inline constexpr const char* circuit_bound = "circuit_transcendence_bound";
inline constexpr const char* tensor_network_bound = "tensor_network_parameter_bound";
inline constexpr const char* spectral = "spectral_lower_bound";
inline constexpr const char* gibbs = "gibbs_state_sandwich";
}  // namespace rule

struct DerivationStep {
  std::string rule;
  std::string detail;

  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

/// A transcendence degree, or a one-sided bound on one, with the chain of rules that produced it.
struct GammaValue {
  GammaKind kind = GammaKind::exact;
  mpz_class value = 0;
  std::vector<DerivationStep> provenance;

  bool bounds_from_below() const { return kind == GammaKind::exact || kind == GammaKind::lower_bound; }
  bool bounds_from_above() const { return kind == GammaKind::exact || kind == GammaKind::upper_bound; }

  static GammaValue make(GammaKind k, mpz_class v, std::vector<DerivationStep> steps = {}) {
    return GammaValue{k, std::move(v), std::move(steps)};
  }
};

inline json to_json(const DerivationStep& s) { return {{"rule", s.rule}, {"detail", s.detail}}; }

inline json to_json(const GammaValue& g) {
  json steps = json::array();
  for (const auto& s : g.provenance) steps.push_back(to_json(s));
  return {{"kind", to_string(g.kind)}, {"value", algebra::bigint_to_json(g.value)}, {"provenance", steps}};
}

}  // namespace transclab::gamma
