#include <cmath>

#include <gtest/gtest.h>

#include "rwrs/error.hpp"
#include "rwrs/process.hpp"
#include "rwrs/stats.hpp"
#include "support/oracles.hpp"

using namespace rwrs;

TEST(Process, TimeIndices) {
  EXPECT_EQ(time_indices(1024, {0.25, 0.5, 1.0}), (std::vector<std::size_t>{256, 512, 1024}));
  EXPECT_EQ(time_indices(10, {0.3, 0.7}), (std::vector<std::size_t>{3, 7}));
  EXPECT_EQ(time_indices(3, {0.1}), (std::vector<std::size_t>{0}));
}

TEST(Process, ValidateRejectsBadGrids) {
  RwrsConfig c;
  c.times = {};
  EXPECT_THROW(validate(c), ConfigError);
  c.times = {0.5, 0.5};
  EXPECT_THROW(validate(c), ConfigError);
  c.times = {0.0, 1.0};
  EXPECT_THROW(validate(c), ConfigError);
  c.times = {1.5};
  EXPECT_THROW(validate(c), ConfigError);
  c.times = {1.0};
  c.replicates = 0;
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Process, PartialSumsMatchNaive) {
  RandomStream walk_rng(1);
  RandomStream scen_rng(2);
  const auto path = sample_walk(IncrementLaw::simple(), 200, walk_rng);
  const auto [lo, hi] = std::minmax_element(path.positions.begin(), path.positions.end());
  const auto window = sample_scenery(SceneryModel::ar1(0.5), *lo, *hi, scen_rng);
  const std::vector<std::size_t> idx{0, 50, 200};
  const auto sums = rwrs_partial_sums(path, window, idx);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k <= idx[j]; ++k) s += window.at(path.positions[k]);
    EXPECT_NEAR(sums[j], s, 1e-9);
  }
}

TEST(Process, ZeroSceneryGivesZero) {
  RwrsConfig c;
  c.model = SceneryModel::zero();
  c.n = 256;
  c.replicates = 20;
  const auto b = simulate_rwrs(c);
  for (double v : b.raw) EXPECT_EQ(v, 0.0);
}

TEST(Process, DeterministicAcrossThreadCounts) {
  RwrsConfig c;
  c.model = SceneryModel::doubling();
  c.n = 512;
  c.times = {0.5, 1.0};
  c.replicates = 40;
  c.seed = 99;
  c.threads = 1;
  const auto a = simulate_rwrs(c);
  c.threads = 4;
  const auto b = simulate_rwrs(c);
  EXPECT_EQ(a.raw, b.raw);
  EXPECT_EQ(a.walk_seeds, b.walk_seeds);
  EXPECT_TRUE(a.property_p.holds());
  for (std::size_t r = 0; r < a.replicates; ++r)
    EXPECT_DOUBLE_EQ(a.normalized_at(r, 1), a.raw_at(r, 1) / std::pow(512.0, 0.75));
}

TEST(Process, MemoryCapApplies) {
  RwrsConfig c;
  c.n = 4096;
  c.replicates = 2;
  c.memory_cap = 10;
  EXPECT_THROW(simulate_rwrs(c), MemoryCapError);
}

TEST(SecondMoment, ExactIdentityHolds) {
  const auto law = IncrementLaw::simple();
  for (const auto& model : {SceneryModel::iid(), SceneryModel::ar1(0.5), SceneryModel::doubling(),
                            SceneryModel::iterated(0.3), SceneryModel::linear(PowerCoefficients{3.0})}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto id = second_moment_identity_exact(law, model, n);
      EXPECT_TRUE(id.agreement) << model.name() << " n=" << n;
      EXPECT_EQ(id.paths, std::size_t{1} << n);
    }
  }
}

TEST(SecondMoment, ExactMatchesIndependentOracleForIid) {
  // With unit-variance i.i.d. scenery E Sigma_n^2 = E alpha(n, 0).
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto id = second_moment_identity_exact(IncrementLaw::simple(), SceneryModel::iid(), n);
    EXPECT_NEAR(id.lhs, oracle::simple_expected_alpha0(n), 1e-10) << n;
  }
}

TEST(SecondMoment, ExactMatchesBruteForceForAr1) {
  // E Sigma_n^2 = 2^{-n} sum_paths sum_{k,l} r(S_k - S_l), with r from the oracle.
  const std::size_t n = 6;
  double expected = 0.0;
  for (const auto& p : oracle::all_simple_paths(n))
    for (auto a : p)
      for (auto b : p) expected += oracle::ar1_covariance(0.5, std::size_t(std::abs(a - b)));
  expected /= double(1u << n);
  const auto id = second_moment_identity_exact(IncrementLaw::simple(), SceneryModel::ar1(0.5), n);
  EXPECT_NEAR(id.lhs, expected, 1e-10);
  EXPECT_NEAR(id.rhs, expected, 1e-10);
}

TEST(SecondMoment, Errors) {
  EXPECT_THROW(second_moment_identity_exact(IncrementLaw::simple(), SceneryModel::iid(), 30), ConfigError);
  EXPECT_THROW(second_moment_identity_exact(IncrementLaw::simple(), SceneryModel::iterated(0.5, Transfer::Tanh), 3),
               ConfigError);
}

TEST(SecondMoment, MonteCarloAgreement) {
  for (const auto& model : {SceneryModel::iid(), SceneryModel::ar1(0.5), SceneryModel::doubling()}) {
    const auto id = second_moment_identity_mc(IncrementLaw::simple(), model, 256, 3000, 4);
    EXPECT_TRUE(id.agreement) << model.name() << " lhs=" << id.lhs << " rhs=" << id.rhs;
  }
}

TEST(Process, VarianceMatchesOracleForIid) {
  RwrsConfig c;
  c.n = 400;
  c.replicates = 6000;
  c.seed = 3;
  const auto b = simulate_rwrs(c);
  const auto col = b.raw_column(0);
  const double se = stats::variance_standard_error(col);
  EXPECT_NEAR(stats::variance(col), oracle::simple_expected_alpha0(400), 4 * se);
}
