#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rwrs/walk.hpp"

namespace rwrs {

/// Discretization of Brownian motion, its local time and the process
/// Delta_t = int_0^inf L_t(x) dZ_+(x) + int_0^inf L_t(-x) dZ_-(x).
/// h close to sqrt(dt) is the recommended pairing.
struct LimitConfig {
  double dt = 1e-4;
  double h = 1e-2;
  double horizon = 1.0;
  /// Strictly increasing, in (0, horizon].
  std::vector<double> times{1.0};
  std::size_t replicates = 5000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void validate(const LimitConfig& config);

/// Binned local time L_t(x_j) on bins [j h, (j+1) h); bin 0 starts at x = 0
/// and belongs to the positive half-line.
struct LocalTimeField {
  double h = 0.0;
  Site first_bin = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> values;  ///< values[time][bin - first_bin]

  std::size_t bins() const { return values.empty() ? 0 : values.front().size(); }
  double edge(std::size_t j) const { return static_cast<double>(first_bin + static_cast<Site>(j)) * h; }
  /// h * sum_j L_t(x_j); equals t.
  double mass(std::size_t time_index) const;
  /// int L_t(x)^2 dx.
  double squared_integral(std::size_t time_index) const;
  /// int (sum_k weights_k L_{t_k}(x))^2 dx over all field times.
  double quadratic_functional(std::span<const double> weights) const;
};

/// Local time of replicate `replicate` at every config time. The path uses
/// the (seed, replicate, Brownian) stream, so it matches simulate_delta.
LocalTimeField simulate_bm_local_time(const LimitConfig& config, std::size_t replicate);

struct DeltaBatch {
  std::vector<double> times;
  std::size_t replicates = 0;
  std::vector<double> delta;             ///< replicates x times, row-major
  std::vector<double> squared_integral;  ///< int L_t^2 dx = Var(Delta_t | B)
  std::uint64_t seed = 0;

  double at(std::size_t replicate, std::size_t j) const { return delta[replicate * times.size() + j]; }
  std::vector<double> column(std::size_t j) const;
  std::vector<double> squared_integral_column(std::size_t j) const;
};

/// Delta at every config time for every replicate. Each replicate uses three
/// streams: the Brownian path and the two half-line noises.
DeltaBatch simulate_delta(const LimitConfig& config);

/// int (sum_k weights_k L_{t_k})^2 dx for each replicate (t_k = config times).
std::vector<double> simulate_quadratic_functional(const LimitConfig& config, std::span<const double> weights);

struct RefinementComparison {
  double coarse_variance = 0.0;  ///< Var(Delta_T) at (dt, h)
  double fine_variance = 0.0;    ///< Var(Delta_T) at (dt/2, h/2)
  double standard_error = 0.0;   ///< Monte Carlo SE of the coarse variance
  std::size_t replicates = 0;
};

/// Var(Delta_T) at (dt, h) and (dt/2, h/2) from coupled realizations: the
/// coarse path and noise are aggregated from the fine ones.
RefinementComparison compare_refinement(const LimitConfig& coarse);

}  // namespace rwrs
