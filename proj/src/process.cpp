#include "rwrs/process.hpp"

#include <algorithm>
#include <cmath>

#include "rwrs/error.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

void validate(const RwrsConfig& config) {
  if (config.times.empty()) throw ConfigError("time grid is empty");
  for (std::size_t j = 0; j < config.times.size(); ++j) {
    const double t = config.times[j];
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("grid times must lie in (0, 1]");
    if (j > 0 && !(t > config.times[j - 1])) throw ConfigError("grid times must be strictly increasing");
  }
  if (config.replicates == 0) throw ConfigError("replicates must be >= 1");
}

std::vector<std::size_t> time_indices(std::size_t n, const std::vector<double>& times) {
  std::vector<std::size_t> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(static_cast<std::size_t>(std::floor(static_cast<double>(n) * t + 1e-9)));
  return out;
}

std::vector<double> RwrsBatch::raw_column(std::size_t j) const {
  std::vector<double> col(replicates);
  for (std::size_t r = 0; r < replicates; ++r) col[r] = raw_at(r, j);
  return col;
}

std::vector<double> RwrsBatch::normalized_column(std::size_t j) const {
  std::vector<double> col(replicates);
  for (std::size_t r = 0; r < replicates; ++r) col[r] = normalized_at(r, j);
  return col;
}

std::vector<double> rwrs_partial_sums(const WalkPath& path, const SceneryWindow& scenery,
                                      const std::vector<std::size_t>& indices) {
  std::vector<double> out(indices.size(), 0.0);
  double sum = 0.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < path.positions.size() && next < indices.size(); ++k) {
    sum += scenery.at(path.positions[k]);
    while (next < indices.size() && indices[next] == k) out[next++] = sum;
  }
  if (next != indices.size()) throw ConfigError("time index beyond the path length");
  return out;
}

RwrsBatch simulate_rwrs(const RwrsConfig& config) {
  validate(config);
  RwrsBatch batch;
  batch.n = config.n;
  batch.times = config.times;
  batch.indices = time_indices(config.n, config.times);
  batch.replicates = config.replicates;
  batch.property_p = check_property_P(config.law, static_cast<int>(config.law.max_abs_step()), 20);

  const std::size_t m = config.times.size();
  batch.raw.assign(config.replicates * m, 0.0);
  batch.normalized.assign(config.replicates * m, 0.0);
  batch.walk_seeds.resize(config.replicates);
  batch.scenery_seeds.resize(config.replicates);
  const double norm = std::pow(static_cast<double>(config.n), 0.75);

  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    const std::uint64_t walk_seed = derive_seed(config.seed, r, StreamTag::Walk);
    const std::uint64_t scenery_seed = derive_seed(config.seed, r, StreamTag::Scenery);
    batch.walk_seeds[r] = walk_seed;
    batch.scenery_seeds[r] = scenery_seed;

    RandomStream walk_rng(walk_seed);
    const WalkPath path = sample_walk(config.law, config.n, walk_rng);
    const auto [lo, hi] = std::minmax_element(path.positions.begin(), path.positions.end());
    RandomStream scenery_rng(scenery_seed);
    const SceneryWindow window = sample_scenery(config.model, *lo, *hi, scenery_rng, config.memory_cap);

    const auto sums = rwrs_partial_sums(path, window, batch.indices);
    for (std::size_t j = 0; j < m; ++j) {
      batch.raw[r * m + j] = sums[j];
      batch.normalized[r * m + j] = config.n == 0 ? sums[j] : sums[j] / norm;
    }
  });
  return batch;
}

// --- second-moment identity ----------------------------------------------------

namespace {

constexpr double kEnumerationLimit = 1e7;

std::vector<double> covariance_table(const SceneryModel& model, std::size_t max_lag) {
  std::vector<double> r(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    const auto v = analytic_covariance(model, k);
    if (!v) throw ConfigError("second-moment identity needs a closed-form covariance for " + model.name());
    r[k] = *v;
  }
  return r;
}

}  // namespace

MomentIdentity second_moment_identity_exact(const IncrementLaw& law, const SceneryModel& model, std::size_t n) {
  const auto& atoms = law.atoms();
  const double count = std::pow(static_cast<double>(atoms.size()), static_cast<double>(n));
  if (count > kEnumerationLimit)
    throw ConfigError("exact enumeration of " + std::to_string(count) + " paths exceeds the 1e7 limit");

  const auto max_lag = static_cast<std::size_t>(law.max_abs_step()) * n;
  const auto r = covariance_table(model, max_lag);
  auto cov = [&](Site d) { return r[static_cast<std::size_t>(std::abs(d))]; };

  // expected_alpha[lag + max_lag] = E alpha(n, lag)
  std::vector<double> expected_alpha(2 * max_lag + 1, 0.0);
  double lhs = 0.0;

  std::vector<std::size_t> digits(n, 0);
  WalkPath path;
  path.positions.assign(n + 1, 0);
  std::size_t paths = 0;
  for (;;) {
    double p = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      p *= atoms[digits[k]].probability;
      path.positions[k + 1] = path.positions[k] + atoms[digits[k]].step;
    }
    // E[Sigma_n^2 | path] = sum_{k,l} r(S_k - S_l)
    double conditional = 0.0;
    for (Site a : path.positions)
      for (Site b : path.positions) conditional += cov(a - b);
    lhs += p * conditional;

    const auto table = self_intersection_table(local_time(path));
    for (Site lag = table.min_lag(); lag <= table.max_lag(); ++lag)
      expected_alpha[static_cast<std::size_t>(lag + static_cast<Site>(max_lag))] += p * static_cast<double>(table.at(lag));
    ++paths;

    std::size_t pos = 0;
    while (pos < n && ++digits[pos] == atoms.size()) digits[pos++] = 0;
    if (pos == n) break;
  }

  double rhs = 0.0;
  for (std::size_t idx = 0; idx < expected_alpha.size(); ++idx)
    rhs += expected_alpha[idx] * cov(static_cast<Site>(idx) - static_cast<Site>(max_lag));

  MomentIdentity out;
  out.mode = "exact";
  out.lhs = lhs;
  out.rhs = rhs;
  out.tolerance = 1e-10 * std::max(1.0, std::abs(lhs));
  out.agreement = std::abs(lhs - rhs) <= out.tolerance;
  out.paths = paths;
  return out;
}

MomentIdentity second_moment_identity_mc(const IncrementLaw& law, const SceneryModel& model, std::size_t n,
                                         std::size_t replicates, std::uint64_t seed, unsigned threads) {
  if (replicates < 2) throw ConfigError("Monte Carlo identity needs at least two replicates");
  std::vector<double> squares(replicates);
  std::vector<double> weighted(replicates);
  const std::vector<std::size_t> last{n};

  parallel_for(replicates, threads, [&](std::size_t rep) {
    RandomStream walk_rng(seed, rep, StreamTag::Walk);
    RandomStream scenery_rng(seed, rep, StreamTag::Scenery);
    const WalkPath path = sample_walk(law, n, walk_rng);
    const auto profile = local_time(path);
    const auto window = sample_scenery(model, profile.left(), profile.right(), scenery_rng);
    const double sigma = rwrs_partial_sums(path, window, last)[0];
    squares[rep] = sigma * sigma;

    const auto table = self_intersection_table(profile);
    const auto r = covariance_table(model, static_cast<std::size_t>(table.max_lag()));
    double w = 0.0;
    for (Site lag = table.min_lag(); lag <= table.max_lag(); ++lag)
      w += static_cast<double>(table.at(lag)) * r[static_cast<std::size_t>(std::abs(lag))];
    weighted[rep] = w;
  });

  // The difference per replicate has mean zero; its spread sets the tolerance.
  std::vector<double> diff(replicates);
  for (std::size_t i = 0; i < replicates; ++i) diff[i] = squares[i] - weighted[i];

  MomentIdentity out;
  out.mode = "monte-carlo";
  out.lhs = stats::mean(squares);
  out.rhs = stats::mean(weighted);
  out.tolerance = 4.0 * std::sqrt(stats::variance(diff) / static_cast<double>(replicates));
  out.agreement = std::abs(out.lhs - out.rhs) <= out.tolerance;
  out.paths = replicates;
  return out;
}

}  // namespace rwrs
