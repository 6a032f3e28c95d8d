#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "json.hpp"
#include "transclab/algebra/serialize.hpp"
#include "transclab/error.hpp"
#include "transclab/gamma/bounds.hpp"
#include "transclab/gamma/gamma_value.hpp"

namespace transclab::gamma {

/// Lower bounds on exact circuit complexity and tensor-network size implied by a gamma value.
struct ComplexityCertificate {
  GammaValue gamma;
  unsigned d = 2;
  std::size_t n = 0;
  mpz_class c0_lower = 0;       // ceil(gamma / d^4)
  mpz_class tn_param_lower = 0;  // gamma
  std::optional<json> family;
  std::vector<DerivationStep> derivation;
};

/// Builds the certificate from a gamma value that bounds from below.
inline ComplexityCertificate make_certificate(GammaValue g, unsigned d, std::size_t n) {
  if (!g.bounds_from_below()) throw DomainError("a certificate needs an exact gamma or a lower bound");
  ComplexityCertificate c;
  c.d = d;
  c.n = n;
  c.c0_lower = circuit_lower_bound(g, d);
  c.tn_param_lower = g.value;
  c.derivation = g.provenance;
  c.derivation.push_back({rule::circuit_bound, "gamma <= d^4 C_0  =>  C_0 >= ceil(" + g.value.get_str() + " / " +
                                                   pow_ui(d, 4).get_str() + ") = " + c.c0_lower.get_str()});
  c.derivation.push_back({rule::tensor_network_bound,
                          "gamma <= N D^delta  =>  every tensor network needs >= " + g.value.get_str() + " parameters"});
  c.gamma = std::move(g);
  return c;
}

inline json to_json(const ComplexityCertificate& c) {
  json steps = json::array();
  for (const auto& s : c.derivation) steps.push_back(to_json(s));
  json out = {{"gamma", to_json(c.gamma)},
              {"d", c.d},
              {"n", c.n},
              {"c0_lower", algebra::bigint_to_json(c.c0_lower)},
              {"tn_param_lower", algebra::bigint_to_json(c.tn_param_lower)},
              {"derivation", steps}};
  if (c.family) out["family"] = *c.family;
  return out;
}

}  // namespace transclab::gamma
