#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "transclab/equidist.hpp"
#include "transclab/hardness.hpp"

using namespace transclab;
using namespace transclab::equidist;
using families::make_family;

namespace {

FamilySpec fam(std::vector<mpz_class> primes, unsigned d) { return make_family(std::move(primes), d, 1); }

/// frac(t * x / (2 pi)) in long double; adequate for t up to ~1e6.
long double frac_over_two_pi(long double x, std::uint64_t t) {
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  long double v = std::fmod(static_cast<long double>(t) * x, two_pi) / two_pi;
  return v < 0 ? v + 1 : v;
}

double torus_distance(double a, double b) {
  double d = std::abs(a - b);
  return std::min(d, 1 - d);
}

}  // namespace

TEST(Weyl, SinglePointIsThetaModOne) {
  auto seq = weyl_points(fam({2, 3}, 2), 1);
  ASSERT_EQ(seq.points.size(), 4u);
  for (std::size_t j = 0; j < 4; ++j) {
    double th = seq.theta[j];
    EXPECT_NEAR(seq.at(0, j), th - std::floor(th), 1e-15);
  }
}

TEST(Weyl, MatchesLongDoubleOracle) {
  auto seq = weyl_points(fam({2}, 2), 100'000, 0, 3);
  for (std::uint64_t t : {1ull, 2ull, 77ull, 4096ull, 99'999ull, 100'000ull}) {
    EXPECT_LE(torus_distance(seq.at(t - 1, 0), frac_over_two_pi(1.0L, t)), 1e-10) << t;
    EXPECT_LE(torus_distance(seq.at(t - 1, 1), frac_over_two_pi(std::sqrt(2.0L), t)), 1e-10) << t;
  }
  EXPECT_LE(seq.point_error, 1e-10);
}

TEST(Weyl, CoordinatesInUnitIntervalAndThetaDistinct) {
  auto seq = weyl_points(fam({2, 3, 5}, 2), 20'000, 0, 2);
  for (double x : seq.points) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  std::vector<double> th = seq.theta;
  std::sort(th.begin(), th.end());
  EXPECT_EQ(std::adjacent_find(th.begin(), th.end()), th.end());
}

TEST(Weyl, ThreadCountDoesNotChangePoints) {
  auto a = weyl_points(fam({2, 3}, 3), 50'000, 0, 1);
  auto b = weyl_points(fam({2, 3}, 3), 50'000, 0, 7);
  EXPECT_EQ(a.points, b.points);
}

TEST(Weyl, PrecisionShortfallIsAnError) {
  EXPECT_THROW(weyl_points(fam({2}, 2), 1'000'000, 10), DomainError);
  EXPECT_NO_THROW(weyl_points(fam({2}, 2), 1'000'000, 16));
  EXPECT_THROW(weyl_points(fam({2}, 2), 0), DomainError);
}

TEST(BoxMeasure, FullAndHalfBoxes) {
  auto seq = weyl_points(fam({2, 3}, 2), 100'000);
  EXPECT_EQ(box_measure(seq, Box::full(4)).fraction, 1.0);
  Box half{{Arc{0, 0.5}, Arc{0, 1}, Arc{0, 1}, Arc{0, 1}}};
  EXPECT_NEAR(box_measure(seq, half).fraction, 0.5, 1e-3);
  Box wrap{{Arc{0.75, 0.25}, Arc{0, 1}, Arc{0, 1}, Arc{0, 1}}};
  EXPECT_DOUBLE_EQ(wrap.volume(), 0.5);
  EXPECT_NEAR(box_measure(seq, wrap).fraction, 0.5, 1e-3);
  EXPECT_THROW(box_measure(seq, Box::full(3)), DomainError);
}

TEST(BoxMeasure, OrthantDeviationShrinks) {
  auto seq = weyl_points(fam({2, 3}, 2), 1'000'000, 0, 4);
  Box orthant{std::vector<Arc>(4, Arc{0, 0.5})};
  EXPECT_LT(box_measure(seq, orthant).deviation, 0.01);
  auto table = hard_fraction_demo(seq, {orthant}, decade_checkpoints(1'000'000));
  ASSERT_EQ(table.size(), 4u);
  EXPECT_EQ(table.back().N, 1'000'000u);
  EXPECT_LT(table.back().deviation, table.front().deviation + 1e-3);
}

TEST(Discrepancy, KsAndGridStats) {
  auto seq = weyl_points(fam({2, 3}, 2), 1'000'000, 0, 4);
  auto st = discrepancy_stats(seq, 8);
  ASSERT_EQ(st.per_coordinate_ks.size(), 4u);
  for (double ks : st.per_coordinate_ks) EXPECT_LT(ks, 0.01);
  EXPECT_LT(st.max_box_deviation, 0.01);
  EXPECT_THROW(discrepancy_stats(seq, 1), DomainError);
  EXPECT_THROW(discrepancy_stats(seq, 40), CapExceeded);  // 40^4 > 10^6
}

TEST(Discrepancy, SinglePointIsMaximallyNonUniform) {
  auto seq = weyl_points(fam({2, 3}, 2), 1);
  auto st = discrepancy_stats(seq, 4);
  EXPECT_GT(st.max_box_deviation, 0.5);
  for (double ks : st.per_coordinate_ks) EXPECT_GE(ks, 0.5);
}

TEST(Discrepancy, KsIgnoresSampleOrder) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> xs(5000);
  for (auto& x : xs) x = u(rng);
  double base = ks_uniform(xs);
  std::shuffle(xs.begin(), xs.end(), rng);
  EXPECT_EQ(ks_uniform(xs), base);
  EXPECT_EQ(ks_uniform({0.5}), 0.5);
}

TEST(Discrepancy, GridPrefixSumsMatchDirectCount) {
  auto seq = weyl_points(fam({2}, 3), 5000);
  const unsigned grid = 5;
  auto st = discrepancy_stats(seq, grid);
  double worst = 0;
  for (unsigned a = 1; a <= grid; ++a)
    for (unsigned b = 1; b <= grid; ++b)
      for (unsigned c = 1; c <= grid; ++c) {
        Box box{{Arc{0, a / 5.0}, Arc{0, b / 5.0}, Arc{0, c / 5.0}}};
        if (c == grid) box.arcs[2] = Arc{0, 1};
        if (b == grid) box.arcs[1] = Arc{0, 1};
        if (a == grid) box.arcs[0] = Arc{0, 1};
        worst = std::max(worst, box_measure(seq, box).deviation);
      }
  EXPECT_NEAR(st.max_box_deviation, worst, 1e-12);
}

TEST(HardFraction, EmptyBoxFamilyGivesEmptyTable) {
  EXPECT_TRUE(hard_fraction_demo(fam({2}, 2), 1000, {}).empty());
  EXPECT_EQ(decade_checkpoints(1000), (std::vector<std::uint64_t>{1000}));
  EXPECT_EQ(decade_checkpoints(25'000), (std::vector<std::uint64_t>{1000, 10'000, 25'000}));
}

TEST(HardFraction, IdentityBoxAgreesWithMonteCarloBall) {
  auto seq = weyl_points(fam({2, 3}, 2), 1'000'000, 0, 4);
  auto box = identity_neighborhood_box(4, 1.0);
  EXPECT_NEAR(box.volume(), 1.0 / 81, 1e-15);
  auto weyl = box_measure(seq, box);
  auto mc = hardness::mc_ball_measure(4, 1.0, 1'000'000, 11, 4);
  const double p = 1.0 / 81;
  const double se = std::sqrt(2 * p * (1 - p) / 1e6);
  EXPECT_LE(std::abs(weyl.fraction - mc.empirical), 3 * se);
  EXPECT_THROW(identity_neighborhood_box(4, 0.0), DomainError);
}
