#include <cmath>

#include <gtest/gtest.h>

#include "rwrs/dependence.hpp"
#include "rwrs/error.hpp"

using namespace rwrs;

TEST(DecayBound, RejectsInvalid) {
  EXPECT_THROW(DecayBound(GeometricDecay{1.0, 1.0}, "t"), ConfigError);
  EXPECT_THROW(DecayBound(GeometricDecay{-1.0, 0.5}, "t"), ConfigError);
  EXPECT_THROW(DecayBound(PolynomialDecay{1.0, 0.0}, "t"), ConfigError);
}

TEST(DecayBound, RedominationIsMonotoneAndDominates) {
  for (double rho : {0.1, 0.5, 0.9, 0.99}) {
    const DecayBound g(GeometricDecay{2.0, rho}, "t");
    double prev = std::numeric_limits<double>::infinity();
    for (int x = 1; x <= 10000; ++x) {
      const double gx = g.redominated(x);
      if (gx < 1e-280) break;
      ASSERT_GE(gx, g(x)) << rho << " " << x;
      const double v = std::pow(double(x), 1.5) * gx;
      ASSERT_LE(v, prev * (1 + 1e-12)) << "rho=" << rho << " x=" << x;
      prev = v;
    }
  }
  const DecayBound p(PolynomialDecay{1.0, 2.0}, "t");
  EXPECT_EQ(p.monotone_threshold(), 1.0);
  EXPECT_TRUE(std::isinf(DecayBound(PolynomialDecay{1.0, 1.2}, "t").monotone_threshold()));
}

TEST(A2, GeometricPassesAtHalf) {
  for (double rho : {0.1, 0.5, 0.9, 0.99}) {
    const auto r = check_A2(DecayBound(GeometricDecay{1.0, rho}, "t"), 0.5);
    EXPECT_TRUE(r.verdict) << rho;
    EXPECT_TRUE(std::isfinite(r.series_value));
    EXPECT_GE(r.tail_bound, 0.0);
  }
}

TEST(A2, PolynomialThreshold) {
  EXPECT_TRUE(check_A2_exists(DecayBound(PolynomialDecay{1.0, 2.0}, "t")).verdict);
  EXPECT_FALSE(check_A2_exists(DecayBound(PolynomialDecay{1.0, 1.0}, "t")).verdict);
  const auto r16 = check_A2_exists(DecayBound(PolynomialDecay{1.0, 1.6}, "t"));
  EXPECT_TRUE(r16.verdict);
  EXPECT_GT(1.6 * r16.epsilon, 1.5);
  // At a fixed epsilon = 1/2 the series for a = 1.6 diverges.
  EXPECT_FALSE(check_A2(DecayBound(PolynomialDecay{1.0, 1.6}, "t"), 0.5).verdict);
}

TEST(A2, VerdictMonotoneInExponent) {
  bool seen_true = false;
  for (double a = 0.5; a <= 4.0; a += 0.05) {
    const bool v = check_A2_exists(DecayBound(PolynomialDecay{1.0, a}, "t")).verdict;
    if (seen_true) EXPECT_TRUE(v) << a;
    seen_true = seen_true || v;
    EXPECT_EQ(v, a > 1.5 + 1e-9) << a;
  }
}

TEST(A2, SeriesValueForPolynomial) {
  // 2^{3i/2} (2^{i eps})^{-a} = q^i with q = 2^{3/2 - a eps}.
  const auto r = check_A2(DecayBound(PolynomialDecay{1.0, 3.0}, "t"), 0.75);
  const double q = std::exp2(1.5 - 2.25);
  EXPECT_NEAR(r.series_value + r.tail_bound, 1.0 / (1.0 - q), 1e-12);
}

TEST(A2, EpsilonRange) {
  const DecayBound g(GeometricDecay{1.0, 0.5}, "t");
  EXPECT_THROW(check_A2(g, 0.0), ConfigError);
  EXPECT_THROW(check_A2(g, 1.0), ConfigError);
}

TEST(ThetaBound, FamiliesFromModels) {
  EXPECT_TRUE(theta_bound(SceneryModel::iid()).vanishing());
  EXPECT_TRUE(theta_bound(SceneryModel::zero()).vanishing());

  const auto ar = theta_bound(SceneryModel::ar1(0.5, 1.0));
  ASSERT_TRUE(std::holds_alternative<GeometricDecay>(ar.family()));
  EXPECT_NEAR(std::get<GeometricDecay>(ar.family()).rate, 0.5, 1e-15);
  EXPECT_NEAR(ar.scale(), std::sqrt(2.0) / 0.5, 1e-12);

  const auto pw = theta_bound(SceneryModel::linear(PowerCoefficients{3.0}));
  ASSERT_TRUE(std::holds_alternative<PolynomialDecay>(pw.family()));
  EXPECT_NEAR(std::get<PolynomialDecay>(pw.family()).exponent, 2.0, 1e-15);

  const auto ifs = theta_bound(SceneryModel::iterated(0.5));
  EXPECT_NEAR(ifs.scale(), std::sqrt(2.0 / 0.75), 1e-12);
  const auto tanh = theta_bound(SceneryModel::iterated(0.5, Transfer::Tanh));
  EXPECT_GT(tanh.scale(), 1.0);
  EXPECT_LT(tanh.scale(), std::sqrt(2.0 / 0.75));

  const auto d = theta_bound(SceneryModel::doubling());
  EXPECT_NEAR(std::get<GeometricDecay>(d.family()).rate, 0.5, 1e-15);

  for (const auto& m : {SceneryModel::ar1(0.9), SceneryModel::iterated(0.7), SceneryModel::doubling()})
    EXPECT_TRUE(check_A2(theta_bound(m), 0.5).verdict) << m.name();
}

TEST(ThetaBound, DominatesCovariances) {
  // |r(k)| <= ||xi_0||_2 g(k).
  for (const auto& m : {SceneryModel::ar1(0.5), SceneryModel::ar1(-0.7), SceneryModel::iterated(0.6),
                        SceneryModel::doubling()}) {
    const auto g = theta_bound(m);
    const double norm = std::sqrt(*analytic_covariance(m, 0));
    for (std::size_t k = 1; k <= 60; ++k)
      EXPECT_LE(std::abs(*analytic_covariance(m, k)), norm * g(double(k)) * (1 + 1e-12)) << m.name() << " " << k;
  }
}

TEST(WeightedCovSum, ClosedFormForAr1) {
  const auto w = weighted_cov_sum(SceneryModel::ar1(0.5), 0.0, 200);
  EXPECT_NEAR(w.partial_sum, 4.0, 1e-9);
  EXPECT_TRUE(w.analytic);
  EXPECT_LT(w.tail_bound, 1e-50);
  const auto w25 = weighted_cov_sum(SceneryModel::ar1(0.5), 0.25, 20);
  EXPECT_GT(w25.partial_sum, 4.0);
  EXPECT_GT(w25.tail_bound, 0.0);
  EXPECT_THROW(weighted_cov_sum(SceneryModel::ar1(0.5), 0.5, 20), ConfigError);
  EXPECT_EQ(weighted_cov_sum(SceneryModel::iid(), 0.25, 5).tail_bound, 0.0);
}
