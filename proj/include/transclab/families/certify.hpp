#pragma once

#include "transclab/families/phase_table.hpp"
#include "transclab/gamma/bounds.hpp"
#include "transclab/gamma/certificate.hpp"

namespace transclab::families {

/// Families up to this many monomials get their gamma from an explicit exact
/// rank computation; larger ones use the basis theorem directly.
inline constexpr std::uint64_t default_rank_verify_cap = std::uint64_t{1} << 16;

/// Certificate for U_t and psi_t: gamma = d^n exactly, C_0 >= ceil(d^n / d^4),
/// and no tensor network with fewer than d^n parameters. No vectors are built.
inline gamma::ComplexityCertificate certify(const FamilySpec& spec,
                                            std::uint64_t rank_verify_cap = default_rank_verify_cap) {
  if (spec.d() < 2) throw DomainError("certificates need d >= 2");
  if (spec.t == 0) throw DomainError("t = 0 gives the identity; gamma collapses to 0");
  const mpz_class expected = spec.context->basis_size();
  gamma::GammaValue g;
  if (expected <= rank_verify_cap) {
    PhaseTable table = build_phase_table(spec, rank_verify_cap);
    g = gamma::gamma_exponential_set(table.entries, spec.t);
    if (g.value != expected) throw Error("rank of the phase table is not d^n; basis arithmetic is broken");
  } else {
    g.kind = gamma::GammaKind::exact;
    g.value = expected;
    g.provenance.push_back({gamma::rule::besicovitch, "the " + expected.get_str() + " monomials phi(j) of " +
                                                          spec.context->describe() + " are Q-linearly independent"});
    g.provenance.push_back({gamma::rule::lindemann_weierstrass,
                            "scale i t, t = " + spec.t.get_str() + " != 0; gamma = d^n (rank not enumerated)"});
  }
  auto cert = gamma::make_certificate(std::move(g), spec.d(), spec.n());
  cert.derivation.push_back({gamma::rule::spectral,
                             "gamma(spec U) <= gamma(U): the C_0 bound holds for every unitary with the spectrum of U_t"});
  cert.family = to_json(spec);
  return cert;
}

}  // namespace transclab::families
