#include "oracles.hpp"

#include <aaprox/counterexample.hpp>
#include <aaprox/pga.hpp>

#include <gtest/gtest.h>

using namespace aaprox;

TEST(Cycle, GradientBranches) {
  EXPECT_EQ(cycle::gradient(0.0), 0.0);
  EXPECT_DOUBLE_EQ(cycle::gradient(1.0), 25.0);
  EXPECT_NEAR(cycle::gradient(249.0), 49.8, 1e-12);
  EXPECT_NEAR(cycle::gradient(-1.0 - 1e-12), -25.0, 1e-10);
  EXPECT_NEAR(cycle::gradient(1.0 - 1e-12), 25.0, 1e-10);
}

TEST(Cycle, ValueIsContinuousAntiderivative) {
  EXPECT_EQ(cycle::value(0.0), 0.0);
  EXPECT_NEAR(cycle::value(1.0), 12.5, 1e-15);
  EXPECT_NEAR(cycle::value(1.0 + 1e-12), 12.5, 1e-9);
  for (double x : {-300.0, -50.0, -3.0, -0.5, 0.2, 0.9, 2.0, 100.0, 249.0}) {
    const double h = 1e-5;
    const double fd = (cycle::value(x + h) - cycle::value(x - h)) / (2.0 * h);
    EXPECT_NEAR(fd, cycle::gradient(x), 1e-6 * std::max(1.0, std::abs(cycle::gradient(x)))) << x;
  }
}

TEST(Cycle, StrongConvexityAndSmoothness) {
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> unif(-300.0, 300.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = unif(rng), b = unif(rng);
    const double slope = (cycle::gradient(a) - cycle::gradient(b)) * (a - b);
    EXPECT_GE(slope, cycle::kMu * (a - b) * (a - b) - 1e-9);
    EXPECT_LE(std::abs(cycle::gradient(a) - cycle::gradient(b)), cycle::kL * std::abs(a - b) + 1e-9);
  }
}

TEST(Cycle, ClosedFormSteps) {
  EXPECT_NEAR(cycle::aa_m1_step(3.0, 5.0), -249.0, 1e-12);
  EXPECT_NEAR(cycle::aa_m1_step(-3.0, -5.0), 249.0, 1e-12);
  const double x1 = cycle::gd_step(2.1);
  EXPECT_NEAR(x1, 1.0956, 1e-14);
  EXPECT_NEAR(cycle::aa_m1_step(x1, 2.1), -249.0, 1e-10);
  EXPECT_NEAR(cycle::aa_m1_step(-249.0, x1), 249.0 * (x1 - 249.0) / (x1 + 747.0), 1e-10);
  EXPECT_DOUBLE_EQ(cycle::aa_m1_step(0.5, 0.5), cycle::gd_step(0.5));
}

TEST(Cycle, ContractionMap) {
  const double y = cycle::inner_limit();
  EXPECT_NEAR(y, 58.7809263974, 1e-9);
  EXPECT_NEAR(cycle::contraction_map(y), y, 1e-12);
  for (double t = 1.0; t <= 245.0; t += 0.5) {
    const double h = 1e-6;
    const double slope = (cycle::contraction_map(t + h) - cycle::contraction_map(t - h)) / (2.0 * h);
    EXPECT_LT(std::abs(slope), 1.0) << t;
  }
}

TEST(Cycle, EngineMatchesClosedForm) {
  for (double x0 : {2.1, 10.0, 100.0, 246.0}) {
    const auto r = cycle::run_cycle(x0, 50);
    // Rounding in the x0 = 246 start is amplified once (gap ~2e-10) and
    // then stays flat over any number of cycles.
    EXPECT_LE(r.max_gap, 1e-9) << x0;
    EXPECT_TRUE(r.in_proven_range);
    for (std::size_t k = 3; k < r.iterates.size(); ++k) EXPECT_GE(std::abs(r.iterates[k]), 1.0) << x0 << " " << k;
  }
  EXPECT_FALSE(cycle::run_cycle(1.5, 2).in_proven_range);
}

TEST(Cycle, LimitPoints) {
  const auto r = cycle::run_cycle(2.1, 50);
  for (std::size_t n = 0; n <= 50; ++n) {
    EXPECT_NEAR(r.iterates[4 * n + 4], 249.0, 249e-9);
    EXPECT_NEAR(r.iterates[4 * n + 6], -249.0, 249e-9);
  }
  EXPECT_NEAR(r.last_4n5, cycle::inner_limit(), 1e-6);
  EXPECT_NEAR(r.last_4n3, -cycle::inner_limit(), 1e-6);
}
