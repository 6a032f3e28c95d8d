#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "transclab/error.hpp"
#include "transclab/synth/gate_set.hpp"

namespace transclab::synth {

/// Default cap on the simulated dimension d^n.
inline constexpr std::uint64_t default_dim_cap = 4096;

/// A gate label placed on an ordered site pair; the first site is the gate's first tensor factor.
struct Step {
  std::string label;
  std::size_t first = 0;
  std::size_t second = 1;

  friend bool operator==(const Step&, const Step&) = default;
};

/// Placed-gate sequence U_1 U_2 ... U_g on n sites; U_g acts first.
struct Circuit {
  std::size_t n = 2;
  std::vector<Step> steps;

  void validate() const {
    for (const auto& s : steps)
      if (s.first >= n || s.second >= n || s.first == s.second)
        throw DomainError("gate sites must be distinct and below n = " + std::to_string(n));
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

inline json to_json(const Circuit& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back({{"gate", s.label}, {"sites", {s.first, s.second}}});
  return {{"n", c.n}, {"steps", steps}};
}

inline std::uint64_t checked_dim(unsigned d, std::size_t n, std::uint64_t cap) {
  std::uint64_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    dim *= d;
    if (dim > cap) throw CapExceeded("d^n exceeds the simulation cap " + std::to_string(cap));
  }
  return dim;
}

namespace detail {

/// Index offsets of the d^2 basis states that differ only on sites (a, b), in
/// gate order (digit of a most significant), plus the list of base indices.
struct Placement {
  std::vector<Eigen::Index> local;  // d^2 offsets
  std::vector<Eigen::Index> bases;  // d^{n-2} base indices with digits a, b = 0
};

inline Placement make_placement(unsigned d, std::size_t n, std::size_t a, std::size_t b) {
  auto stride = [&](std::size_t site) {
    Eigen::Index s = 1;
    for (std::size_t k = site + 1; k < n; ++k) s *= d;
    return s;
  };
  const Eigen::Index sa = stride(a), sb = stride(b);
  Placement p;
  for (unsigned x = 0; x < d; ++x)
    for (unsigned y = 0; y < d; ++y) p.local.push_back(x * sa + y * sb);
  Eigen::Index dim = 1;
  for (std::size_t k = 0; k < n; ++k) dim *= d;
  for (Eigen::Index i = 0; i < dim; ++i)
    if ((i / sa) % d == 0 && (i / sb) % d == 0) p.bases.push_back(i);
  return p;
}

}  // namespace detail

/// A <- A * (G embedded on the placement): mixes columns.
inline void apply_right(Matrix& A, const Matrix& G, const detail::Placement& p) {
  const auto k = static_cast<Eigen::Index>(p.local.size());
  Matrix block(A.rows(), k);
  for (Eigen::Index base : p.bases) {
    for (Eigen::Index c = 0; c < k; ++c) block.col(c) = A.col(base + p.local[c]);
    Matrix mixed = block * G;
    for (Eigen::Index c = 0; c < k; ++c) A.col(base + p.local[c]) = mixed.col(c);
  }
}

/// The embedded gate as a full d^n x d^n matrix.
inline Matrix embed_gate(const Matrix& G, unsigned d, std::size_t n, std::size_t a, std::size_t b) {
  const auto dim = static_cast<Eigen::Index>(checked_dim(d, n, default_dim_cap));
  Matrix m = Matrix::Identity(dim, dim);
  apply_right(m, G, detail::make_placement(d, n, a, b));
  return m;
}

/// U_1 U_2 ... U_g as a dense d^n x d^n matrix.
inline Matrix apply_circuit(const Circuit& c, const GateSet& gs, std::uint64_t dim_cap = default_dim_cap) {
  c.validate();
  const auto dim = static_cast<Eigen::Index>(checked_dim(gs.d(), c.n, dim_cap));
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& s : c.steps) apply_right(u, gs.find(s.label).matrix, detail::make_placement(gs.d(), c.n, s.first, s.second));
  return u;
}

/// Largest singular value of A - B.
inline double opnorm_dist(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw DomainError("opnorm_dist needs equal dimensions");
  if (A.size() == 0) return 0.0;
  Matrix diff = A - B;
  if (diff.rows() <= 64) return Eigen::JacobiSVD<Matrix>(diff).singularValues()(0);
  return Eigen::BDCSVD<Matrix>(diff).singularValues()(0);
}

}  // namespace transclab::synth
