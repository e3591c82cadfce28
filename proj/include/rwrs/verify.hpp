#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwrs/limit.hpp"
#include "rwrs/process.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

/// E int L_1(x)^2 dx for standard Brownian motion: 8 / (3 sqrt(2 pi)).
double brownian_self_intersection_constant();

struct KsResult {
  double statistic = 0.0;  ///< D = sup |F_a - F_b|
  double p_value = 1.0;
};

/// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_q(double lambda);

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// Q(D sqrt(n_a n_b / (n_a + n_b))). Throws ConfigError on an empty sample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  std::optional<double> lower;  ///< pass requires statistic >= lower
  std::optional<double> upper;  ///< pass requires statistic <= upper
  bool pass = false;
  bool mandatory = false;
  std::map<std::string, std::size_t> sample_sizes;
  std::vector<std::uint64_t> seeds;
  double runtime_ms = 0.0;
  std::map<std::string, double> details;
  std::string note;
};

/// Builds a result whose pass flag follows from the bounds.
CheckResult make_check(std::string name, double statistic, std::optional<double> lower,
                       std::optional<double> upper);

void to_json(nlohmann::json& j, const CheckResult& result);

struct VerificationReport {
  std::vector<CheckResult> results;
  bool overall = true;
  nlohmann::json config;
};

void to_json(nlohmann::json& j, const VerificationReport& report);
std::string format_report(const VerificationReport& report);

// --- walk-level checks ----------------------------------------------------------

/// Mass, symmetry, total-pairs, alpha(n,0) = sum N^2 and domination on
/// `paths` sampled walks for each n. Statistic: number of violations.
CheckResult check_local_time_identities(const IncrementLaw& law, const std::vector<std::size_t>& ns,
                                        std::size_t paths, std::uint64_t seed);

/// Exact-mode second-moment identity for every n in 1..n_max and every model.
/// Statistic: largest relative discrepancy.
CheckResult check_second_moment_exact(const IncrementLaw& law, const std::vector<SceneryModel>& models,
                                      std::size_t n_max);

struct PropLocalTimeOptions {
  std::vector<std::size_t> ns{256, 1024, 4096};
  std::size_t replicates = 500;
  std::uint64_t seed = 0;
  std::vector<double> lambdas{0.25, 0.5, 0.75};
  std::vector<Site> lags{0, 1, 2, 4, 8, 16};
  /// n values compared for the Holder-ratio stability.
  std::vector<std::size_t> holder_ns{1024, 4096};
  unsigned threads = 0;
};

/// Decreasing medians of n^{-3/4} max N_n, growth slopes of E alpha(n,0)^p
/// for p = 1, 2, and Holder-ratio stability for each lambda.
std::vector<CheckResult> check_prop_local_time(const IncrementLaw& law, const PropLocalTimeOptions& options);

/// KS between n^{-3/2} sum_i (sum_k w_k N_{[n t_k]}(i))^2 and simulated
/// int (sum_k w_k L_{t_k}(x))^2 dx (t_k = limit.times).
CheckResult check_quadratic_functional(const IncrementLaw& law, std::size_t n, std::size_t replicates,
                                       std::uint64_t seed, const LimitConfig& limit,
                                       std::span<const double> weights);

// --- scenery-level checks ----------------------------------------------------------

/// |sigma_inf^2 estimate / expected - 1| <= tolerance.
CheckResult check_sigma_inf(const SceneryModel& model, double expected, double tolerance,
                            std::size_t sample_length, std::size_t k_max, std::uint64_t seed);

// --- RWRS checks -------------------------------------------------------------------

/// Slope of log Var(Sigma_n) on log n in [1.4, 1.6].
CheckResult check_variance_scaling(const IncrementLaw& law, const SceneryModel& model,
                                   const std::vector<std::size_t>& ns, std::size_t replicates, std::uint64_t seed,
                                   unsigned threads = 0);

/// KS at the last grid time (which must be 1) between n^{-3/4} Sigma_n and
/// sqrt(sigma_inf_sq) Delta_1 from `limit` (whose last time must be 1), plus a
/// covariance check of (Sigma_{[n/2]}, Sigma_n) when both grids contain 1/2.
/// Throws NegativeLongRunVariance when sigma_inf_sq < 0.
std::vector<CheckResult> check_fdd_convergence(const RwrsConfig& config, const DeltaBatch& limit,
                                               double sigma_inf_sq);

struct TightnessOptions {
  std::vector<std::size_t> ns{1024, 4096};
  std::vector<double> times{0.25, 0.5, 0.75, 1.0};
  std::size_t replicates = 2000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

/// Max over grid pairs of E|Sigma_{[nt]} - Sigma_{[nt1]}|^2 / (n^{3/2} |t - t1|^{3/2})
/// for each n; statistic is the largest over smallest of those maxima.
CheckResult check_tightness_moment(const IncrementLaw& law, const SceneryModel& model,
                                   const TightnessOptions& options);

// --- limit-process checks --------------------------------------------------------

CheckResult check_occupation_conservation(const LimitConfig& config);
/// Mean of int L_t^2 at the last batch time vs t^{3/2} 8/(3 sqrt(2 pi)).
CheckResult check_self_intersection_constant(const DeltaBatch& batch, double tolerance);
/// Var(Delta_t)/t^{3/2} within `tolerance` of its mean over the batch times.
CheckResult check_self_similarity(const DeltaBatch& batch, double tolerance);
/// Skewness of Delta at the last time within four standard errors of 0.
CheckResult check_delta_symmetry(const DeltaBatch& batch);
/// KS of Delta_{t3} - Delta_{t1} against Delta_{t2} with t3 - t1 = t2, on
/// disjoint halves of the replicates.
CheckResult check_stationary_increments(const DeltaBatch& batch, double t1, double t3, double t2);

// --- dependence checks -----------------------------------------------------------

/// Geometric bounds pass at eps = 0.5; polynomial a = 2 and a = 1.6 pass,
/// a = 1 fails. Statistic: number of wrong verdicts.
CheckResult check_a2_verdicts();

// --- suite -------------------------------------------------------------------------

struct VerifyOptions {
  std::uint64_t seed = 42;
  bool quick = false;
  unsigned threads = 0;
  /// Repeat the KS acceptance over this many master seeds (0 = skip).
  std::size_t calibration_seeds = 0;
};

/// Mandatory suite (always): local-time identities, exact second-moment
/// identity, occupation conservation, variance-scaling slope, KS fdd at t = 1
/// for the i.i.d. scenery. The full suite adds every other check.
VerificationReport run_verification(const VerifyOptions& options);

}  // namespace rwrs
