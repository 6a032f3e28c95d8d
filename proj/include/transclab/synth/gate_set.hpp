#pragma once

#include <Eigen/Dense>

#include <cctype>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "transclab/error.hpp"

namespace transclab::synth {

using Matrix = Eigen::MatrixXcd;
using cd = std::complex<double>;
using json = nlohmann::json;

inline constexpr double unitarity_tolerance = 1e-10;

struct Gate {
  std::string label;
  Matrix matrix;  // d^2 x d^2, first tensor factor is the more significant digit
};

inline bool is_unitary(const Matrix& m, double tol = unitarity_tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

/// SWAP (x) SWAP conjugation fixes the gate, so placements (i, j) and (j, i) coincide.
inline bool is_swap_symmetric(const Matrix& g, unsigned d, double tol = 1e-12) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (unsigned a = 0; a < d; ++a)
    for (unsigned b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1;
  return (s * g * s - g).norm() <= tol;
}

/// Finite set of two-qudit unitaries with unique labels.
class GateSet {
 public:
  GateSet(unsigned d, std::vector<Gate> gates) : d_(d), gates_(std::move(gates)) {
    if (d_ < 2) throw DomainError("gate sets need d >= 2");
    if (gates_.empty()) throw DomainError("gate set is empty");
    std::set<std::string> labels;
    for (const auto& g : gates_) {
      if (g.matrix.rows() != static_cast<Eigen::Index>(d_ * d_) || g.matrix.cols() != g.matrix.rows())
        throw DomainError("gate '" + g.label + "' is not d^2 x d^2");
      if (!is_unitary(g.matrix)) throw DomainError("gate '" + g.label + "' is not unitary within 1e-10");
      if (!labels.insert(g.label).second) throw DomainError("duplicate gate label '" + g.label + "'");
    }
  }

  unsigned d() const { return d_; }
  std::size_t size() const { return gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }

  const Gate& find(const std::string& label) const {
    for (const auto& g : gates_)
      if (g.label == label) return g;
    throw DomainError("unknown gate label '" + label + "'");
  }

 private:
  unsigned d_;
  std::vector<Gate> gates_;
};

inline std::string normalize_label(std::string s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    // accept "⊗" (UTF-8 E2 8A 97) and ASCII spellings alike
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 && static_cast<unsigned char>(s[i + 1]) == 0x8A &&
        static_cast<unsigned char>(s[i + 2]) == 0x97) {
      out += 'x';
      i += 2;
      continue;
    }
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
    if (c == '*' || c == '_' || c == '-' || c == ' ') c = 'x';
    out += c;
  }
  return out;
}

namespace detail {
inline Matrix kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix k(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  return k;
}
}  // namespace detail

/// Qubit built-ins: CNOT (control on the first site), CZ, SWAP, and one-qubit
/// H, S, T, X placed on either site ("H⊗1", "1⊗H", ASCII "Hx1" also accepted).
inline Gate builtin_gate(const std::string& label) {
  const std::string key = normalize_label(label);
  Matrix m = Matrix::Zero(4, 4);
  if (key == "cnot" || key == "cx") {
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return {"CNOT", m};
  }
  if (key == "cz") {
    m(0, 0) = m(1, 1) = m(2, 2) = 1;
    m(3, 3) = -1;
    return {"CZ", m};
  }
  if (key == "swap") {
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
    return {"SWAP", m};
  }
  const double r = 1 / std::numbers::sqrt2;
  std::map<std::string, Eigen::Matrix2cd> one;
  one["h"] << r, r, r, -r;
  one["x"] << 0, 1, 1, 0;
  one["s"] << 1, 0, 0, cd(0, 1);
  one["t"] << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  if (key.size() == 3 && key[1] == 'x') {
    std::string a(1, key[0]), b(1, key[2]);
    std::string upper_a = a == "1" ? "1" : std::string(1, static_cast<char>(std::toupper(a[0])));
    std::string upper_b = b == "1" ? "1" : std::string(1, static_cast<char>(std::toupper(b[0])));
    if (a == "1" && one.count(b)) return {"1⊗" + upper_b, detail::kron2(id, one[b])};
    if (b == "1" && one.count(a)) return {upper_a + "⊗1", detail::kron2(one[a], id)};
  }
  throw DomainError("unknown built-in gate '" + label + "'");
}

/// Comma-separated list of built-in labels, e.g. "cnot" or "CNOT,H⊗1".
inline GateSet builtin_gate_set(const std::string& csv) {
  std::vector<Gate> gates;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) gates.push_back(builtin_gate(item));
  return GateSet(2, std::move(gates));
}

inline cd parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw FormatError("complex entries are [re, im] pairs");
}

/// Square complex matrix from row-major JSON: a list of rows of [re, im] pairs, or a flat list of pairs.
inline Matrix matrix_from_json(const json& v) {
  try {
    if (!v.is_array() || v.empty()) throw FormatError("matrix must be a nonempty array");
    const bool nested = v[0].is_array() && !v[0].empty() && v[0][0].is_array();
    std::vector<cd> flat;
    if (nested) {
      for (const auto& row : v)
        for (const auto& e : row) flat.push_back(parse_complex(e));
    } else {
      for (const auto& e : v) flat.push_back(parse_complex(e));
    }
    auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (dim * dim != static_cast<Eigen::Index>(flat.size())) throw FormatError("matrix is not square");
    if (nested && static_cast<Eigen::Index>(v.size()) != dim) throw FormatError("matrix rows have unequal lengths");
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = flat[r * dim + c];
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed matrix: ") + e.what());
  }
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

/// [{"label": "...", "matrix": [...]}, ...]; d is inferred from the matrix size.
inline GateSet gate_set_from_json(const json& v) {
  try {
    if (!v.is_array() || v.empty()) throw FormatError("gate set must be a nonempty array");
    std::vector<Gate> gates;
    for (const auto& g : v) gates.push_back({g.at("label").get<std::string>(), matrix_from_json(g.at("matrix"))});
    auto d = static_cast<unsigned>(std::llround(std::sqrt(static_cast<double>(gates.front().matrix.rows()))));
    return GateSet(d, std::move(gates));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed gate set: ") + e.what());
  }
}

}  // namespace transclab::synth
