#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "transclab/error.hpp"
#include "transclab/hardness/closed_form.hpp"
#include "transclab/parallel.hpp"

namespace transclab::hardness {

/// Samples per independent stream. Fixed so that results do not depend on the thread count.
inline constexpr std::uint64_t samples_per_batch = 1u << 14;

/// Relative slack on the inclusive event boundary so that atoms sitting exactly
/// on it (Rademacher sums) are not lost to rounding.
inline constexpr double boundary_slack = 1e-12;

enum class Verdict { consistent, violation };

inline const char* to_string(Verdict v) { return v == Verdict::consistent ? "CONSISTENT" : "VIOLATION"; }

struct McReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t hits = 0;
  bool exhaustive = false;
  double empirical = 0;       // hits / samples
  LogValue bound;
  double standard_error = 0;  // binomial SE at p = bound (clamped to [0, 1])
  Verdict verdict = Verdict::consistent;
  std::vector<std::uint64_t> batch_hits;

  /// Signed distance from the bound in standard errors.
  double z_score() const {
    if (standard_error == 0) return empirical == bound.value ? 0.0 : (empirical > bound.value ? INFINITY : -INFINITY);
    return (empirical - bound.value) / standard_error;
  }
};

inline void finish_report(McReport& r) {
  r.hits = 0;
  for (auto h : r.batch_hits) r.hits += h;
  r.empirical = r.samples ? static_cast<double>(r.hits) / static_cast<double>(r.samples) : 0.0;
  const double p = std::clamp(r.bound.value, 0.0, 1.0);
  r.standard_error = r.exhaustive ? 0.0 : std::sqrt(p * (1 - p) / static_cast<double>(r.samples));
  r.verdict = r.empirical > r.bound.value + 5 * r.standard_error ? Verdict::violation : Verdict::consistent;
}

template <class Kernel>
void run_batches(McReport& r, unsigned threads, Kernel&& kernel) {
  const std::uint64_t batches = (r.samples + samples_per_batch - 1) / samples_per_batch;
  r.batch_hits.assign(batches, 0);
  parallel_for(batches, threads, [&](std::size_t b) {
    const std::uint64_t begin = b * samples_per_batch;
    const std::uint64_t end = std::min(r.samples, begin + samples_per_batch);
    r.batch_hits[b] = kernel(b, begin, end);
  });
  finish_report(r);
}

/// (eps~ / pi)^D with eps~ = 2 arcsin(eps / 2): Haar measure of the eps-ball
/// (operator norm) around the identity inside the D-dimensional diagonal torus.
inline LogValue ball_measure_bound(unsigned D, double epsilon) {
  const double arc = epsilon >= 2 ? std::numbers::pi : 2 * std::asin(epsilon / 2);
  return power_of_dimension(arc / std::numbers::pi, D);
}

/// Fraction of uniform phase vectors alpha in [0, 2pi)^D with max_j |e^{i alpha_j} - 1| <= eps.
inline McReport mc_ball_measure(unsigned D, double epsilon, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1) {
  if (D < 1 || D > 32) throw DomainError("mc_ball_measure needs 1 <= D <= 32");
  if (!(epsilon > 0)) throw DomainError("mc_ball_measure needs epsilon > 0");
  if (samples < 10'000) throw DomainError("mc_ball_measure needs at least 10^4 samples");
  McReport r;
  r.samples = samples;
  r.seed = seed;
  r.bound = ball_measure_bound(D, epsilon);
  run_batches(r, threads, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    CounterRng rng(seed, b);
    std::uint64_t hits = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      bool inside = true;
      for (unsigned j = 0; j < D; ++j) {
        // every coordinate is drawn so that stream positions are fixed per sample
        double alpha = 2 * std::numbers::pi * rng.uniform();
        if (2 * std::sin(alpha / 2) > epsilon) inside = false;
      }
      hits += inside;
    }
    return hits;
  });
  return r;
}

enum class OverlapVariant { steinhaus, rademacher };

inline OverlapVariant parse_variant(const std::string& s) {
  if (s == "steinhaus") return OverlapVariant::steinhaus;
  if (s == "rademacher") return OverlapVariant::rademacher;
  throw DomainError("unknown overlap variant '" + s + "' (expected steinhaus or rademacher)");
}

inline const char* to_string(OverlapVariant v) { return v == OverlapVariant::steinhaus ? "steinhaus" : "rademacher"; }

struct OverlapOptions {
  /// Unit reference vector phi; empty means the uniform coherent vector D^{-1/2}(1, ..., 1).
  std::vector<std::complex<double>> reference;
  /// Enumerate all 2^D sign vectors instead of sampling (Rademacher only).
  bool exhaustive = false;
  unsigned threads = 1;
};

inline constexpr unsigned max_exhaustive_dimension = 24;

/// Tail P[|<phi, psi>| >= 1 - eps^2/2] for psi with i.i.d. unit-modulus
/// (Steinhaus) or +-1 (Rademacher) entries scaled by D^{-1/2}.
inline McReport mc_overlap_tail(unsigned D, double epsilon, OverlapVariant variant, std::uint64_t samples,
                                std::uint64_t seed, const OverlapOptions& opts = {}) {
  if (D < 4) throw DomainError("mc_overlap_tail needs D >= 4");
  if (!(epsilon >= 0 && epsilon <= 1)) throw DomainError("mc_overlap_tail needs epsilon in [0, 1]");
  std::vector<std::complex<double>> phi = opts.reference;
  if (phi.empty()) phi.assign(D, std::complex<double>(1.0 / std::sqrt(static_cast<double>(D)), 0.0));
  if (phi.size() != D) throw DomainError("reference vector has the wrong dimension");
  double nrm = 0;
  for (auto z : phi) nrm += std::norm(z);
  if (std::abs(nrm - 1) > 1e-9) throw DomainError("reference vector must be a unit vector");
  for (auto& z : phi) z = std::conj(z);

  const double tau = 1 - epsilon * epsilon / 2;
  const double threshold = tau * (1 - boundary_slack);
  const double scale = 1.0 / std::sqrt(static_cast<double>(D));

  McReport r;
  r.seed = seed;
  r.bound = variant == OverlapVariant::steinhaus ? steinhaus_tail(D, epsilon).bound : rademacher_tail(D, epsilon);

  if (opts.exhaustive) {
    if (variant != OverlapVariant::rademacher) throw DomainError("exhaustive mode needs the rademacher variant");
    if (D > max_exhaustive_dimension) throw CapExceeded("exhaustive enumeration limited to D <= 24");
    r.exhaustive = true;
    r.samples = std::uint64_t{1} << D;
    run_batches(r, opts.threads, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
      std::uint64_t hits = 0;
      for (std::uint64_t mask = begin; mask < end; ++mask) {
        std::complex<double> acc = 0;
        for (unsigned j = 0; j < D; ++j) acc += ((mask >> j) & 1u) ? -phi[j] : phi[j];
        hits += std::abs(acc) * scale >= threshold;
      }
      return hits;
    });
    return r;
  }

  r.samples = samples;
  if (samples == 0) throw DomainError("mc_overlap_tail needs samples >= 1");
  run_batches(r, opts.threads, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    CounterRng rng(seed, b);
    std::uint64_t hits = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      std::complex<double> acc = 0;
      if (variant == OverlapVariant::steinhaus) {
        for (unsigned j = 0; j < D; ++j) acc += phi[j] * std::polar(1.0, 2 * std::numbers::pi * rng.uniform());
      } else {
        std::uint64_t bits = 0;
        for (unsigned j = 0; j < D; ++j) {
          if (j % 64 == 0) bits = rng();
          acc += ((bits >> (j % 64)) & 1u) ? -phi[j] : phi[j];
        }
      }
      hits += std::abs(acc) * scale >= threshold;
    }
    return hits;
  });
  return r;
}

}  // namespace transclab::hardness
