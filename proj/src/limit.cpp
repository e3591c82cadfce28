#include "rwrs/limit.hpp"

#include <algorithm>
#include <cmath>

#include "rwrs/error.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/random.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

void validate(const LimitConfig& config) {
  if (!(config.dt > 0.0) || !(config.h > 0.0) || !(config.horizon > 0.0))
    throw ConfigError("dt, h and horizon must be positive");
  if (config.times.empty()) throw ConfigError("limit time grid is empty");
  for (std::size_t j = 0; j < config.times.size(); ++j) {
    const double t = config.times[j];
    if (!(t > 0.0 && t <= config.horizon + 1e-12)) throw ConfigError("limit times must lie in (0, horizon]");
    if (j > 0 && !(t > config.times[j - 1])) throw ConfigError("limit times must be strictly increasing");
  }
  if (config.replicates == 0) throw ConfigError("replicates must be >= 1");
}

namespace {

std::size_t step_count(double horizon, double dt) {
  return static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
}

/// Bin indices floor(B_{k dt} / h) for k = 0..steps.
std::vector<Site> brownian_bins(std::size_t steps, double dt, double h, RandomStream& rng) {
  std::vector<Site> bins(steps + 1);
  const double scale = std::sqrt(dt);
  double b = 0.0;
  bins[0] = 0;
  for (std::size_t k = 1; k <= steps; ++k) {
    b += scale * rng.normal();
    bins[k] = static_cast<Site>(std::floor(b / h));
  }
  return bins;
}

/// Occupation times per bin at each requested time. Step k contributes dt to
/// the bin of B_{k dt}; a fractional last step contributes the remainder.
struct Occupation {
  Site first_bin = 0;
  std::vector<std::vector<double>> at_time;
};

Occupation occupation(const std::vector<Site>& bins, double dt, const std::vector<double>& times) {
  const auto [lo, hi] = std::minmax_element(bins.begin(), bins.end());
  Occupation out;
  out.first_bin = *lo;
  const auto width = static_cast<std::size_t>(*hi - *lo) + 1;
  std::vector<std::uint64_t> counts(width, 0);
  std::size_t done = 0;  // steps already counted
  const std::size_t steps = bins.size() - 1;
  for (double t : times) {
    const std::size_t full = std::min(static_cast<std::size_t>(std::floor(t / dt + 1e-9)), steps);
    for (; done < full; ++done) ++counts[static_cast<std::size_t>(bins[done] - *lo)];
    std::vector<double> occ(width);
    for (std::size_t j = 0; j < width; ++j) occ[j] = static_cast<double>(counts[j]) * dt;
    const double rem = std::max(0.0, t - static_cast<double>(full) * dt);
    if (rem > 0.0) occ[static_cast<std::size_t>(bins[full] - *lo)] += rem;
    out.at_time.push_back(std::move(occ));
  }
  return out;
}

/// zeta_j ~ N(0, cell) for bins lo..hi: the positive stream fills j = 0, 1, ...
/// and the negative stream j = -1, -2, ... so values do not depend on the range.
std::vector<double> half_line_noise(Site lo, Site hi, double cell, RandomStream& plus, RandomStream& minus) {
  std::vector<double> zeta(static_cast<std::size_t>(hi - lo) + 1, 0.0);
  const double sd = std::sqrt(cell);
  for (Site j = 0; j <= hi; ++j) {
    const double z = sd * plus.normal();
    if (j >= lo) zeta[static_cast<std::size_t>(j - lo)] = z;
  }
  for (Site j = -1; j >= lo; --j) {
    const double z = sd * minus.normal();
    if (j <= hi) zeta[static_cast<std::size_t>(j - lo)] = z;
  }
  return zeta;
}

LocalTimeField field_from(const Occupation& occ, double h, const std::vector<double>& times) {
  LocalTimeField field;
  field.h = h;
  field.first_bin = occ.first_bin;
  field.times = times;
  for (const auto& o : occ.at_time) {
    std::vector<double> v(o.size());
    for (std::size_t j = 0; j < o.size(); ++j) v[j] = o[j] / h;
    field.values.push_back(std::move(v));
  }
  return field;
}

}  // namespace

double LocalTimeField::mass(std::size_t time_index) const {
  double s = 0.0;
  for (double v : values.at(time_index)) s += v;
  return h * s;
}

double LocalTimeField::squared_integral(std::size_t time_index) const {
  double s = 0.0;
  for (double v : values.at(time_index)) s += v * v;
  return h * s;
}

double LocalTimeField::quadratic_functional(std::span<const double> weights) const {
  if (weights.size() != values.size()) throw ConfigError("one weight per field time is required");
  double s = 0.0;
  for (std::size_t j = 0; j < bins(); ++j) {
    double v = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) v += weights[k] * values[k][j];
    s += v * v;
  }
  return h * s;
}

LocalTimeField simulate_bm_local_time(const LimitConfig& config, std::size_t replicate) {
  validate(config);
  RandomStream rng(config.seed, replicate, StreamTag::Brownian);
  const auto bins = brownian_bins(step_count(config.horizon, config.dt), config.dt, config.h, rng);
  return field_from(occupation(bins, config.dt, config.times), config.h, config.times);
}

std::vector<double> DeltaBatch::column(std::size_t j) const {
  std::vector<double> col(replicates);
  for (std::size_t r = 0; r < replicates; ++r) col[r] = delta[r * times.size() + j];
  return col;
}

std::vector<double> DeltaBatch::squared_integral_column(std::size_t j) const {
  std::vector<double> col(replicates);
  for (std::size_t r = 0; r < replicates; ++r) col[r] = squared_integral[r * times.size() + j];
  return col;
}

DeltaBatch simulate_delta(const LimitConfig& config) {
  validate(config);
  const std::size_t m = config.times.size();
  DeltaBatch batch;
  batch.times = config.times;
  batch.replicates = config.replicates;
  batch.seed = config.seed;
  batch.delta.assign(config.replicates * m, 0.0);
  batch.squared_integral.assign(config.replicates * m, 0.0);
  const std::size_t steps = step_count(config.horizon, config.dt);

  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    RandomStream brownian(config.seed, r, StreamTag::Brownian);
    RandomStream plus(config.seed, r, StreamTag::NoisePlus);
    RandomStream minus(config.seed, r, StreamTag::NoiseMinus);
    const auto bins = brownian_bins(steps, config.dt, config.h, brownian);
    const auto occ = occupation(bins, config.dt, config.times);
    const Site lo = occ.first_bin;
    const Site hi = lo + static_cast<Site>(occ.at_time.front().size()) - 1;
    const auto zeta = half_line_noise(lo, hi, config.h, plus, minus);
    for (std::size_t j = 0; j < m; ++j) {
      double d = 0.0;
      double sq = 0.0;
      const auto& o = occ.at_time[j];
      for (std::size_t b = 0; b < o.size(); ++b) {
        const double local = o[b] / config.h;
        d += local * zeta[b];
        sq += local * local;
      }
      batch.delta[r * m + j] = d;
      batch.squared_integral[r * m + j] = config.h * sq;
    }
  });
  return batch;
}

std::vector<double> simulate_quadratic_functional(const LimitConfig& config, std::span<const double> weights) {
  validate(config);
  if (weights.size() != config.times.size()) throw ConfigError("one weight per limit time is required");
  std::vector<double> out(config.replicates);
  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    out[r] = simulate_bm_local_time(config, r).quadratic_functional(weights);
  });
  return out;
}

RefinementComparison compare_refinement(const LimitConfig& coarse) {
  validate(coarse);
  const double fine_dt = coarse.dt / 2.0;
  const double fine_h = coarse.h / 2.0;
  const std::size_t fine_steps = 2 * step_count(coarse.horizon, coarse.dt);
  const double horizon = static_cast<double>(fine_steps) * fine_dt;
  const std::vector<double> at_end{horizon};

  std::vector<double> coarse_delta(coarse.replicates);
  std::vector<double> fine_delta(coarse.replicates);
  parallel_for(coarse.replicates, coarse.threads, [&](std::size_t r) {
    RandomStream brownian(coarse.seed, r, StreamTag::Brownian);
    RandomStream plus(coarse.seed, r, StreamTag::NoisePlus);
    RandomStream minus(coarse.seed, r, StreamTag::NoiseMinus);

    // Fine path; the coarse path is its even-indexed subsequence.
    std::vector<double> b(fine_steps + 1, 0.0);
    const double scale = std::sqrt(fine_dt);
    for (std::size_t k = 1; k <= fine_steps; ++k) b[k] = b[k - 1] + scale * brownian.normal();
    std::vector<Site> fine_bins(fine_steps + 1);
    std::vector<Site> coarse_bins(fine_steps / 2 + 1);
    for (std::size_t k = 0; k <= fine_steps; ++k) fine_bins[k] = static_cast<Site>(std::floor(b[k] / fine_h));
    for (std::size_t k = 0; k < coarse_bins.size(); ++k)
      coarse_bins[k] = static_cast<Site>(std::floor(b[2 * k] / coarse.h));

    const auto fine_occ = occupation(fine_bins, fine_dt, at_end);
    const auto coarse_occ = occupation(coarse_bins, coarse.dt, at_end);
    const Site coarse_lo = coarse_occ.first_bin;
    const Site coarse_hi = coarse_lo + static_cast<Site>(coarse_occ.at_time[0].size()) - 1;
    const Site fine_lo = std::min(fine_occ.first_bin, 2 * coarse_lo);
    const Site fine_hi =
        std::max(fine_occ.first_bin + static_cast<Site>(fine_occ.at_time[0].size()) - 1, 2 * coarse_hi + 1);
    const auto zeta = half_line_noise(fine_lo, fine_hi, fine_h, plus, minus);
    auto fine_zeta = [&](Site j) { return zeta[static_cast<std::size_t>(j - fine_lo)]; };

    double df = 0.0;
    const auto& fo = fine_occ.at_time[0];
    for (std::size_t j = 0; j < fo.size(); ++j) df += fo[j] / fine_h * fine_zeta(fine_occ.first_bin + static_cast<Site>(j));
    double dc = 0.0;
    const auto& co = coarse_occ.at_time[0];
    for (std::size_t j = 0; j < co.size(); ++j) {
      const Site bin = coarse_lo + static_cast<Site>(j);
      dc += co[j] / coarse.h * (fine_zeta(2 * bin) + fine_zeta(2 * bin + 1));
    }
    fine_delta[r] = df;
    coarse_delta[r] = dc;
  });

  RefinementComparison out;
  out.replicates = coarse.replicates;
  out.coarse_variance = stats::variance(coarse_delta);
  out.fine_variance = stats::variance(fine_delta);
  out.standard_error = stats::variance_standard_error(coarse_delta);
  return out;
}

}  // namespace rwrs
