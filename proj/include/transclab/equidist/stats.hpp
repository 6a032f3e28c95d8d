#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "transclab/equidist/weyl.hpp"
#include "transclab/error.hpp"

namespace transclab::equidist {

/// Half-open arc [lo, hi) of the circle R/Z. lo > hi wraps through 0.
struct Arc {
  double lo = 0;
  double hi = 1;

  bool contains(double x) const { return lo < hi ? (x >= lo && x < hi) : (x >= lo || x < hi); }
  double length() const { return lo < hi ? hi - lo : 1 - lo + hi; }
};

/// Axis-aligned box in the torus [0, 1)^D, one arc per coordinate.
struct Box {
  std::vector<Arc> arcs;

  static Box full(std::size_t D) { return Box{std::vector<Arc>(D, Arc{0, 1})}; }

  double volume() const {
    double v = 1;
    for (const auto& a : arcs) v *= a.length();
    return v;
  }

  void validate(std::size_t D) const {
    if (arcs.size() != D) throw DomainError("box has " + std::to_string(arcs.size()) + " sides, sequence has " + std::to_string(D));
    for (const auto& a : arcs) {
      if (!(a.lo >= 0 && a.lo <= 1 && a.hi >= 0 && a.hi <= 1)) throw DomainError("box sides must lie in [0, 1]");
      if (a.lo == a.hi) throw DomainError("degenerate box side");
    }
  }
};

/// Box of phases whose diagonal unitary lies within operator-norm eps of the
/// identity: every coordinate within eps~/(2 pi) of 0 mod 1, eps~ = 2 arcsin(eps/2).
inline Box identity_neighborhood_box(std::size_t D, double epsilon) {
  if (!(epsilon > 0 && epsilon < 2)) throw DomainError("identity neighborhood needs eps in (0, 2)");
  const double half = 2 * std::asin(epsilon / 2) / (2 * std::numbers::pi);
  return Box{std::vector<Arc>(D, Arc{1 - half, half})};
}

struct BoxMeasure {
  double fraction = 0;
  double volume = 0;
  double deviation = 0;
};

inline bool in_box(const WeylSequence& seq, std::uint64_t row, const Box& box) {
  for (std::size_t j = 0; j < seq.dim; ++j)
    if (!box.arcs[j].contains(seq.at(row, j))) return false;
  return true;
}

/// Fraction of the first `prefix` points in the box (all points when prefix = 0).
inline BoxMeasure box_measure(const WeylSequence& seq, const Box& box, std::uint64_t prefix = 0) {
  box.validate(seq.dim);
  const std::uint64_t N = prefix == 0 ? seq.count : std::min(prefix, seq.count);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < N; ++t) hits += in_box(seq, t, box);
  BoxMeasure m;
  m.fraction = static_cast<double>(hits) / static_cast<double>(N);
  m.volume = box.volume();
  m.deviation = std::abs(m.fraction - m.volume);
  return m;
}

inline constexpr std::uint64_t max_grid_boxes = 1'000'000;

struct DiscrepancyStats {
  double max_box_deviation = 0;       // over anchored grid boxes [0, a/grid)
  std::vector<double> per_coordinate_ks;
};

/// Kolmogorov-Smirnov distance of a sample from the uniform law on [0, 1).
inline double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    d = std::max({d, (i + 1) / n - xs[i], xs[i] - i / n});
  return d;
}

inline DiscrepancyStats discrepancy_stats(const WeylSequence& seq, unsigned grid) {
  if (grid < 2) throw DomainError("grid must be >= 2");
  const std::size_t D = seq.dim;
  double cells_d = std::pow(static_cast<double>(grid), static_cast<double>(D));
  if (cells_d > static_cast<double>(max_grid_boxes))
    throw CapExceeded("grid^D = " + std::to_string(cells_d) + " exceeds the cap of 10^6 boxes");
  const std::size_t cells = static_cast<std::size_t>(cells_d);

  // histogram of grid cells, then D-dimensional inclusive prefix sums
  std::vector<std::uint64_t> count(cells, 0);
  for (std::uint64_t t = 0; t < seq.count; ++t) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < D; ++j) {
      auto c = std::min<std::size_t>(static_cast<std::size_t>(seq.at(t, j) * grid), grid - 1);
      idx = idx * grid + c;
    }
    ++count[idx];
  }
  std::size_t stride = 1;
  for (std::size_t j = D; j-- > 0;) {
    for (std::size_t idx = 0; idx < cells; ++idx)
      if ((idx / stride) % grid != 0) count[idx] += count[idx - stride];
    stride *= grid;
  }

  DiscrepancyStats s;
  const double N = static_cast<double>(seq.count);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    double vol = 1;
    std::size_t rest = idx;
    for (std::size_t j = 0; j < D; ++j) {
      vol *= static_cast<double>(rest % grid + 1) / grid;
      rest /= grid;
    }
    s.max_box_deviation = std::max(s.max_box_deviation, std::abs(count[idx] / N - vol));
  }
  s.per_coordinate_ks.resize(D);
  std::vector<double> col(seq.count);
  for (std::size_t j = 0; j < D; ++j) {
    for (std::uint64_t t = 0; t < seq.count; ++t) col[t] = seq.at(t, j);
    s.per_coordinate_ks[j] = ks_uniform(col);
  }
  return s;
}

struct FractionRow {
  std::size_t box = 0;
  std::uint64_t N = 0;
  double fraction = 0;
  double volume = 0;
  double deviation = 0;
};

/// Checkpoints 10^3, 10^4, ... below N, then N itself.
inline std::vector<std::uint64_t> decade_checkpoints(std::uint64_t N) {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t c = 1000; c < N; c *= 10) cps.push_back(c);
  cps.push_back(N);
  return cps;
}

/// Membership fractions of the first N points per box at each checkpoint; the
/// boxes stand in for Jordan-measurable sets of approximable unitaries.
inline std::vector<FractionRow> hard_fraction_demo(const WeylSequence& seq, const std::vector<Box>& boxes,
                                                   const std::vector<std::uint64_t>& checkpoints) {
  std::vector<FractionRow> table;
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    boxes[b].validate(seq.dim);
    const double vol = boxes[b].volume();
    std::uint64_t hits = 0, t = 0;
    for (std::uint64_t cp : checkpoints) {
      cp = std::min(cp, seq.count);
      for (; t < cp; ++t) hits += in_box(seq, t, boxes[b]);
      double frac = static_cast<double>(hits) / static_cast<double>(cp);
      table.push_back({b, cp, frac, vol, std::abs(frac - vol)});
    }
  }
  return table;
}

inline std::vector<FractionRow> hard_fraction_demo(const FamilySpec& spec, std::uint64_t N, const std::vector<Box>& boxes,
                                                   unsigned threads = 1) {
  if (boxes.empty()) return {};
  return hard_fraction_demo(weyl_points(spec, N, 0, threads), boxes, decade_checkpoints(N));
}

}  // namespace transclab::equidist
