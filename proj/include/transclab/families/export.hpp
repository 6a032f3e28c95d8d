#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "transclab/error.hpp"
#include "transclab/families/numeric.hpp"

namespace transclab::families {

/// Writes (re, im) float64 pairs, little-endian, no header.
inline void write_complex_binary(const std::string& path, std::span<const std::complex<double>> values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (const auto& z : values) {
    for (double part : {z.real(), z.imag()}) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(part);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      char buf[8];
      std::memcpy(buf, &bits, 8);
      out.write(buf, 8);
    }
  }
  if (!out) throw Error("write failed: " + path);
}

inline std::vector<std::complex<double>> read_complex_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::complex<double>> values;
  char buf[16];
  while (in.read(buf, 16)) {
    double parts[2];
    for (int k = 0; k < 2; ++k) {
      std::uint64_t bits;
      std::memcpy(&bits, buf + 8 * k, 8);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      parts[k] = std::bit_cast<double>(bits);
    }
    values.emplace_back(parts[0], parts[1]);
  }
  if (in.gcount() != 0) throw FormatError(path + " is not a whole number of complex float64 pairs");
  return values;
}

inline json sidecar(const FamilySpec& spec, const char* kind, int precision, double error_bound, std::size_t dim,
                    const std::string& data_file) {
  return {{"schema", "transclab/1"}, {"kind", kind},           {"spec", to_json(spec)},
          {"t", spec.t.get_str()},   {"precision", precision}, {"error_bound", error_bound},
          {"dim", dim},              {"data", data_file},      {"layout", "little-endian float64 (re, im) pairs"}};
}

/// Diagonal of U_t to `<prefix>.bin` plus `<prefix>.json`.
inline json export_unitary(const DiagonalUnitary& u, const std::string& prefix) {
  std::vector<std::complex<double>> diag(u.dim());
  for (std::size_t j = 0; j < u.dim(); ++j) diag[j] = u.entry(j);
  write_complex_binary(prefix + ".bin", diag);
  // |e^{ia} - e^{ib}| <= |a - b| plus a few ulps from polar().
  json meta = sidecar(u.spec, "diagonal_unitary", u.precision, u.max_error() + 4 * 0x1.0p-53, u.dim(), prefix + ".bin");
  std::ofstream(prefix + ".json") << meta.dump(2) << "\n";
  return meta;
}

inline json export_state(const StateVector& s, const std::string& prefix) {
  write_complex_binary(prefix + ".bin", s.amplitudes);
  json meta = sidecar(s.spec, "coherent_state", s.precision, s.error_bound, s.dim(), prefix + ".bin");
  std::ofstream(prefix + ".json") << meta.dump(2) << "\n";
  return meta;
}

}  // namespace transclab::families
