#include <cmath>

#include <gtest/gtest.h>

#include "rwrs/error.hpp"
#include "rwrs/limit.hpp"
#include "rwrs/stats.hpp"
#include "rwrs/verify.hpp"
#include "support/oracles.hpp"

using namespace rwrs;

TEST(Limit, ConstantMatchesQuadrature) {
  EXPECT_NEAR(brownian_self_intersection_constant(), oracle::brownian_self_intersection_quadrature(), 1e-6);
  EXPECT_NEAR(brownian_self_intersection_constant(), 1.06385, 1e-5);
}

TEST(Limit, ValidateRejects) {
  LimitConfig c;
  c.dt = 0.0;
  EXPECT_THROW(validate(c), ConfigError);
  c = LimitConfig{};
  c.times = {0.5, 0.4};
  EXPECT_THROW(validate(c), ConfigError);
  c.times = {2.0};
  EXPECT_THROW(validate(c), ConfigError);
  c.times = {1.0};
  c.replicates = 0;
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Limit, OccupationMassEqualsTime) {
  LimitConfig c;
  c.times = {0.1, 0.37, 0.5, 1.0};
  c.seed = 5;
  for (std::size_t r = 0; r < 10; ++r) {
    const auto f = simulate_bm_local_time(c, r);
    for (std::size_t j = 0; j < f.times.size(); ++j) {
      EXPECT_NEAR(f.mass(j), f.times[j], 1e-12);
      for (double v : f.values[j]) EXPECT_GE(v, 0.0);
      if (j > 0)
        for (std::size_t b = 0; b < f.bins(); ++b) EXPECT_GE(f.values[j][b], f.values[j - 1][b]);
    }
  }
}

TEST(Limit, QuadraticFunctionalOfField) {
  LimitConfig c;
  c.times = {0.5, 1.0};
  const auto f = simulate_bm_local_time(c, 0);
  const double one[] = {0.0, 1.0};
  EXPECT_NEAR(f.quadratic_functional(one), f.squared_integral(1), 1e-12);
  const double w[] = {1.0, -1.0};
  EXPECT_GE(f.quadratic_functional(w), 0.0);
  EXPECT_THROW(f.quadratic_functional(std::span<const double>(w, 1)), ConfigError);
}

TEST(Limit, DeterministicAcrossThreads) {
  LimitConfig c;
  c.replicates = 30;
  c.times = {0.5, 1.0};
  c.seed = 11;
  c.threads = 1;
  const auto a = simulate_delta(c);
  c.threads = 3;
  const auto b = simulate_delta(c);
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_EQ(a.squared_integral, b.squared_integral);
}

TEST(Limit, SelfIntersectionMean) {
  LimitConfig c;
  c.replicates = 2000;
  c.seed = 17;
  const auto b = simulate_delta(c);
  const auto sq = b.squared_integral_column(0);
  const double se = std::sqrt(stats::variance(sq) / double(sq.size()));
  EXPECT_NEAR(stats::mean(sq), oracle::brownian_self_intersection_quadrature(), 4 * se + 0.02);
}

TEST(Limit, DeltaVarianceAndSymmetry) {
  LimitConfig c;
  c.replicates = 3000;
  c.times = {0.25, 1.0};
  c.seed = 23;
  const auto b = simulate_delta(c);
  const auto d1 = b.column(1);
  // Var Delta_t = E int L_t^2 = t^{3/2} c.
  EXPECT_NEAR(stats::variance(d1), 1.06385, 4 * stats::variance_standard_error(d1) + 0.02);
  EXPECT_NEAR(stats::variance(b.column(0)) / stats::variance(d1), 0.125, 0.02);
  EXPECT_LT(std::abs(stats::skewness(d1)) / stats::skewness_standard_error(d1), 4.0);
  EXPECT_LT(std::abs(stats::mean(d1)), 4 * std::sqrt(stats::variance(d1) / double(d1.size())));
}

TEST(Limit, RefinementStable) {
  LimitConfig c;
  c.dt = 4e-4;
  c.h = 2e-2;
  c.replicates = 1500;
  c.seed = 29;
  const auto cmp = compare_refinement(c);
  EXPECT_LT(std::abs(cmp.fine_variance - cmp.coarse_variance), cmp.standard_error);
  EXPECT_EQ(cmp.replicates, 1500u);
}

TEST(Limit, QuadraticFunctionalSampleNonNegative) {
  LimitConfig c;
  c.replicates = 200;
  c.times = {0.5, 1.0};
  const double w[] = {1.0, -1.0};
  for (double v : simulate_quadratic_functional(c, w)) EXPECT_GE(v, 0.0);
}
