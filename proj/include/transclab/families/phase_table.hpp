#pragma once

#include <vector>

#include "transclab/families/family_spec.hpp"
#include "transclab/gamma/gibbs.hpp"

namespace transclab::families {

/// phi(j) = (prod_k p_k^{j_k})^{1/d} for every j in Z_d^n, in linear index order.
struct PhaseTable {
  FamilySpec spec;
  std::vector<RadicalElement> entries;

  const RadicalElement& operator[](const Exponent& j) const { return entries.at(exponent_to_index(j, spec.d())); }
};

inline PhaseTable build_phase_table(const FamilySpec& spec, std::uint64_t cap = default_table_cap) {
  const std::uint64_t size = checked_table_size(spec, cap);
  PhaseTable table{spec, {}};
  table.entries.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i)
    table.entries.push_back(RadicalElement::monomial(spec.context, index_to_exponent(i, spec.d(), spec.n())));
  return table;
}

/// Exact spectrum of H = sum_j phi(j) |j><j|.
inline gamma::SpectrumSet build_hamiltonian_spectrum(const FamilySpec& spec, std::uint64_t cap = default_table_cap) {
  return gamma::SpectrumSet{build_phase_table(spec, cap).entries};
}

}  // namespace transclab::families
