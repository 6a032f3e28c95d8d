#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "transclab/hardness.hpp"

using namespace transclab;
using namespace transclab::hardness;

namespace {

/// Number of sign vectors s in {+-1}^D with |sum s| / D >= tau, by binomial counting.
std::uint64_t rademacher_uniform_hits(unsigned D, double tau) {
  std::uint64_t hits = 0, binom = 1;
  for (unsigned k = 0; k <= D; ++k) {
    const double overlap = std::abs(static_cast<double>(D) - 2.0 * k) / D;
    if (overlap >= tau * (1 - boundary_slack)) hits += binom;
    binom = binom * (D - k) / (k + 1);
  }
  return hits;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(DiagonalBound, Examples) {
  EXPECT_EQ(diagonal_bound({2, 4, 2, 0.0}).measure_bound.value, 0.0);
  auto b = diagonal_bound({2, 4, 2, std::nextafter(1.0, 0.0)});
  EXPECT_LT(rel(b.measure_bound.value, oracle::pi_over_pow(6, 16)), 1e-10);
  EXPECT_NEAR(b.measure_bound.value, 3.2e-5, 0.05e-5);
  EXPECT_NEAR(b.g, (std::log(std::numbers::pi / 2) / 4) * 16 / std::log(4.0), 1e-12);
  EXPECT_NEAR(b.g, 1.30, 0.01);
  EXPECT_THROW(diagonal_bound({2, 4, 2, 1.0}), DomainError);
  EXPECT_THROW(diagonal_bound({1, 4, 2, 0.5}), DomainError);
  EXPECT_THROW(diagonal_bound({2, 1, 2, 0.5}), DomainError);
  EXPECT_THROW(diagonal_bound({2, 4, 0, 0.5}), DomainError);
}

TEST(DiagonalBound, Log10CompanionSurvivesUnderflow) {
  auto b = diagonal_bound({2, 40, 3, 0.5});
  EXPECT_EQ(b.measure_bound.value, 0.0);
  EXPECT_NEAR(b.measure_bound.log10, std::ldexp(1.0, 40) * std::log10(std::asin(0.25)), 1e-3 * std::ldexp(1.0, 40));
  EXPECT_TRUE(std::isfinite(b.measure_bound.log10));
}

TEST(DiagonalBound, MonotoneInEpsilonAndDimension) {
  double prev = -INFINITY;
  for (double eps = 0.0; eps < 1.0; eps += 0.05) {
    double l = diagonal_bound({2, 5, 2, eps}).measure_bound.log10;
    EXPECT_GE(l, prev);
    prev = l;
  }
  prev = INFINITY;
  for (unsigned n = 2; n < 12; ++n) {
    double l = diagonal_bound({3, n, 2, 0.7}).measure_bound.log10;
    EXPECT_LE(l, prev);
    prev = l;
  }
}

TEST(SignDiagonalBound, Examples) {
  EXPECT_NEAR(sign_diagonal_bound({2, 2, 1, 0.5}).value, std::pow(std::numbers::pi / 4, 4), 1e-15);
  EXPECT_NEAR(sign_diagonal_bound({2, 2, 1, 0.5}).value, 0.381, 0.001);
  EXPECT_NEAR(sign_diagonal_bound({2, 4, 1, 0.5}).value, 0.0209, 0.0001);
  EXPECT_NEAR(sign_diagonal_bound({2, 30, 1, 0.5}).log10, std::ldexp(1.0, 30) * std::log10(std::numbers::pi / 4), 1);
  EXPECT_THROW(sign_diagonal_bound({2, 4, 1, 1.0}), DomainError);
}

TEST(CoherentBound, Examples) {
  auto b4 = coherent_bound({2, 4, 1, 0.5});
  EXPECT_NEAR(b4.bound.value, 4.0, 1e-12);
  EXPECT_NEAR(b4.g_cap, 16 / (16 * std::log(4.0)), 1e-12);
  auto b8 = coherent_bound({2, 8, 1, 0.5});
  EXPECT_LT(rel(b8.bound.value, 4 * std::numbers::e * std::exp(-16.0)), 1e-12);
  EXPECT_NEAR(b8.bound.value, 1.2e-6, 0.05e-6);
  ASSERT_TRUE(b8.sign_bound.has_value());
  EXPECT_LT(rel(b8.sign_bound->value, 2 * std::exp(-32.0)), 1e-12);
  EXPECT_FALSE(coherent_bound({2, 8, 1, 0.8}).sign_bound.has_value());
  EXPECT_THROW(coherent_sign_bound({2, 8, 1, 0.8}), DomainError);
  EXPECT_THROW(coherent_bound({2, 8, 1, 1.2}), DomainError);
}

TEST(CoherentBound, NonIncreasingInDimension) {
  double prev = INFINITY;
  for (unsigned n = 2; n < 40; ++n) {
    double l = coherent_bound({2, n, 2, 0.3}).bound.log10;
    EXPECT_LE(l, prev);
    prev = l;
  }
}

TEST(SteinhausTail, Examples) {
  auto a = steinhaus_tail(16, 1.0);
  EXPECT_NEAR(a.bound.value, 4 * std::exp(-3.0), 1e-14);
  EXPECT_NEAR(a.bound.value, 0.199, 0.001);
  EXPECT_NEAR(steinhaus_tail(4, 0.0).bound.value, 4 * std::exp(-3.0), 1e-14);
  EXPECT_THROW(steinhaus_tail(0, 0.5), DomainError);
  EXPECT_THROW(steinhaus_tail(8, 1.5), DomainError);
}

TEST(SteinhausTail, ProofChainIsOrdered) {
  for (double D : {4.0, 5.0, 8.0, 16.0, 100.0, 1e4})
    for (double eps = 0.0; eps <= 1.0; eps += 0.125) {
      auto s = steinhaus_tail(D, eps);
      EXPECT_LE(s.bound.log10, s.quarter_form.log10 + 1e-12);
      EXPECT_LE(s.quarter_form.log10, s.final_form.log10 + 1e-12);
    }
}

TEST(RademacherTail, ClosedForm) {
  EXPECT_LT(rel(rademacher_tail(16, 0.5).value, 2 * std::exp(-16 * 0.875 * 0.875 / 2)), 1e-12);
  EXPECT_NEAR(rademacher_tail(4, 1.0).value, 2 * std::exp(-0.5), 1e-14);
}

TEST(McBall, Examples) {
  auto full = mc_ball_measure(1, 2.0, 10'000, 1);
  EXPECT_EQ(full.empirical, 1.0);
  EXPECT_EQ(full.bound.value, 1.0);
  for (unsigned D : {2u, 4u}) {
    auto r = mc_ball_measure(D, 1.0, 1'000'000, 99, 4);
    EXPECT_NEAR(r.bound.value, std::pow(3.0, -static_cast<double>(D)), 1e-15);
    EXPECT_LE(std::abs(r.z_score()), 5.0) << "D=" << D;
    EXPECT_EQ(r.verdict, Verdict::consistent);
  }
  EXPECT_THROW(mc_ball_measure(2, 0.0, 10'000, 1), DomainError);
  EXPECT_THROW(mc_ball_measure(33, 1.0, 10'000, 1), DomainError);
  EXPECT_THROW(mc_ball_measure(2, 1.0, 9'999, 1), DomainError);
}

TEST(McBall, ConvergesForSeveralRadii) {
  for (unsigned D : {1u, 3u, 6u, 8u})
    for (double eps : {0.5, 1.0, 1.5}) {
      auto r = mc_ball_measure(D, eps, 400'000, 1234 + D, 2);
      if (r.bound.value * r.samples < 20) continue;  // too few expected hits for a normal approximation
      EXPECT_LE(std::abs(r.z_score()), 5.0) << "D=" << D << " eps=" << eps;
    }
}

TEST(McBall, DeterministicAcrossThreadCounts) {
  auto a = mc_ball_measure(3, 1.0, 200'000, 42, 1);
  auto b = mc_ball_measure(3, 1.0, 200'000, 42, 8);
  EXPECT_EQ(a.batch_hits, b.batch_hits);
  EXPECT_EQ(a.hits, b.hits);
  auto c = mc_ball_measure(3, 1.0, 200'000, 43, 8);
  EXPECT_NE(a.batch_hits, c.batch_hits);
}

TEST(McOverlap, ExhaustiveRademacherMatchesBinomialCount) {
  for (unsigned D : {4u, 8u, 16u})
    for (double eps : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      auto r = mc_overlap_tail(D, eps, OverlapVariant::rademacher, 0, 0, {{}, true, 4});
      EXPECT_EQ(r.samples, std::uint64_t{1} << D);
      EXPECT_EQ(r.hits, rademacher_uniform_hits(D, 1 - eps * eps / 2)) << "D=" << D << " eps=" << eps;
      EXPECT_LE(r.empirical, rademacher_tail(D, eps).value);
    }
  auto zero = mc_overlap_tail(16, 0.0, OverlapVariant::rademacher, 0, 0, {{}, true, 1});
  EXPECT_EQ(zero.hits, 2u);
}

TEST(McOverlap, SteinhausBelowChainBound) {
  auto r = mc_overlap_tail(16, 1.0, OverlapVariant::steinhaus, 200'000, 5, {{}, false, 4});
  EXPECT_LE(r.empirical, 0.199);
  EXPECT_EQ(r.verdict, Verdict::consistent);
  auto exact_one = mc_overlap_tail(16, 0.0, OverlapVariant::steinhaus, 50'000, 5, {{}, false, 2});
  EXPECT_EQ(exact_one.hits, 0u);
}

TEST(McOverlap, SampledRademacherTracksExhaustive) {
  auto exhaustive = mc_overlap_tail(12, 0.75, OverlapVariant::rademacher, 0, 0, {{}, true, 1});
  auto sampled = mc_overlap_tail(12, 0.75, OverlapVariant::rademacher, 500'000, 17, {{}, false, 3});
  const double p = exhaustive.empirical;
  EXPECT_LE(std::abs(sampled.empirical - p), 5 * std::sqrt(p * (1 - p) / 500'000));
}

TEST(McOverlap, CustomReferenceAndErrors) {
  std::vector<std::complex<double>> e0(8, 0.0);
  e0[0] = 1.0;
  // |<e0, psi>| = 1/sqrt(8) always, below 1 - eps^2/2 for eps = 1
  auto r = mc_overlap_tail(8, 1.0, OverlapVariant::steinhaus, 20'000, 3, {e0, false, 1});
  EXPECT_EQ(r.hits, 0u);
  std::vector<std::complex<double>> bad(8, 1.0);
  EXPECT_THROW(mc_overlap_tail(8, 1.0, OverlapVariant::steinhaus, 20'000, 3, {bad, false, 1}), DomainError);
  EXPECT_THROW(mc_overlap_tail(3, 1.0, OverlapVariant::steinhaus, 20'000, 3), DomainError);
  EXPECT_THROW(mc_overlap_tail(8, 1.0, OverlapVariant::steinhaus, 0, 3, {{}, true, 1}), DomainError);
  EXPECT_THROW(parse_variant("gaussian"), DomainError);
}

TEST(McOverlap, DeterministicAcrossThreadCounts) {
  auto a = mc_overlap_tail(16, 0.9, OverlapVariant::steinhaus, 100'000, 8, {{}, false, 1});
  auto b = mc_overlap_tail(16, 0.9, OverlapVariant::steinhaus, 100'000, 8, {{}, false, 6});
  EXPECT_EQ(a.batch_hits, b.batch_hits);
}

TEST(McReport, VerdictRule) {
  McReport r;
  r.samples = 10'000;
  r.bound = LogValue{0.01, -2};
  r.batch_hits = {100 + 5 * 10};  // SE = sqrt(0.01 * 0.99 / 1e4) ~ 9.95e-4 -> 5 SE ~ 49.7 hits
  finish_report(r);
  EXPECT_EQ(r.verdict, Verdict::violation);
  r.batch_hits = {149};
  finish_report(r);
  EXPECT_EQ(r.verdict, Verdict::consistent);
}
