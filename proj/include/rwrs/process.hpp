#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rwrs/scenery.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

struct RwrsConfig {
  IncrementLaw law = IncrementLaw::simple();
  SceneryModel model = SceneryModel::iid();
  std::size_t n = 1024;
  /// Strictly increasing grid in (0, 1].
  std::vector<double> times{1.0};
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t memory_cap = kDefaultMemoryCap;
};

/// Throws ConfigError on an empty or unsorted time grid, times outside
/// (0, 1], or zero replicates.
void validate(const RwrsConfig& config);

/// [n t] for every grid time (floor with a 1e-9 guard against round-off).
std::vector<std::size_t> time_indices(std::size_t n, const std::vector<double>& times);

struct RwrsBatch {
  std::size_t n = 0;
  std::vector<double> times;
  std::vector<std::size_t> indices;  ///< [n t_j]
  std::size_t replicates = 0;
  std::vector<double> raw;         ///< replicates x times, row-major
  std::vector<double> normalized;  ///< raw / n^{3/4}
  std::vector<std::uint64_t> walk_seeds;
  std::vector<std::uint64_t> scenery_seeds;
  PropertyPReport property_p;

  double raw_at(std::size_t replicate, std::size_t j) const { return raw[replicate * times.size() + j]; }
  double normalized_at(std::size_t replicate, std::size_t j) const {
    return normalized[replicate * times.size() + j];
  }
  std::vector<double> raw_column(std::size_t j) const;
  std::vector<double> normalized_column(std::size_t j) const;
};

/// Sigma_k = sum_{l <= k} xi_{S_l} at every requested k (sorted), in one pass.
std::vector<double> rwrs_partial_sums(const WalkPath& path, const SceneryWindow& scenery,
                                      const std::vector<std::size_t>& indices);

/// Monte Carlo batch of (Sigma_{[n t_j]})_j. Each replicate draws its walk
/// and its scenery window (on the walk's hull) from separate streams derived
/// from (seed, replicate).
RwrsBatch simulate_rwrs(const RwrsConfig& config);

struct MomentIdentity {
  std::string mode;
  double lhs = 0.0;  ///< E[Sigma_n^2]
  double rhs = 0.0;  ///< sum_i E[alpha(n, i)] r(i)
  double tolerance = 0.0;
  bool agreement = false;
  std::size_t paths = 0;  ///< enumerated paths or replicates
};

/// Exact enumeration of every n-step path; needs analytic covariances.
/// Throws ConfigError if the model has no closed-form covariance or
/// |support|^n exceeds 1e7.
MomentIdentity second_moment_identity_exact(const IncrementLaw& law, const SceneryModel& model, std::size_t n);

/// Monte Carlo version: lhs is the sample mean of Sigma_n^2, rhs the sample
/// mean of sum_i alpha(n, i) r(i); agreement within four standard errors.
MomentIdentity second_moment_identity_mc(const IncrementLaw& law, const SceneryModel& model, std::size_t n,
                                         std::size_t replicates, std::uint64_t seed, unsigned threads = 0);

}  // namespace rwrs
