#pragma once

#include <algorithm>
#include <vector>

#include "transclab/algebra/rank.hpp"
#include "transclab/error.hpp"

namespace transclab::gamma {

/// Exact eigenvalues of an algebraic Hermitian matrix.
struct SpectrumSet {
  std::vector<algebra::RadicalElement> values;
};

struct GibbsBounds {
  std::size_t dim = 0;       // dim_Q span of the listed eigenvalues
  std::size_t gamma_lo = 0;  // bounds on gamma(e^H / tr e^H)
  std::size_t gamma_hi = 0;
};

/// gamma(rho) <= dim_Q spec(H) <= gamma(rho) + 1 for rho = e^H / tr e^H.
/// The span is taken over all listed eigenvalues; a zero eigenvalue adds nothing.
inline GibbsBounds gibbs_bounds(const SpectrumSet& spec) {
  if (spec.values.empty()) throw DomainError("spectrum must be nonempty");
  GibbsBounds b;
  b.dim = algebra::rank_over_q(spec.values);
  b.gamma_hi = b.dim;
  b.gamma_lo = b.dim == 0 ? 0 : b.dim - 1;
  return b;
}

}  // namespace transclab::gamma
