#include "rwrs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "rwrs/dependence.hpp"
#include "rwrs/error.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

double brownian_self_intersection_constant() { return 8.0 / (3.0 * std::sqrt(2.0 * std::numbers::pi)); }

// --- Kolmogorov-Smirnov -------------------------------------------------------

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Equivalent theta-function form, fast for small lambda.
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double s = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double m = 2.0 * k - 1.0;
      const double term = std::exp(-m * m * c);
      s += term;
      if (term < 1e-17) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ConfigError("KS test needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto na = static_cast<double>(x.size());
  const auto nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult out;
  out.statistic = d;
  out.p_value = kolmogorov_q(d * std::sqrt(na * nb / (na + nb)));
  return out;
}

// --- results ------------------------------------------------------------------

CheckResult make_check(std::string name, double statistic, std::optional<double> lower,
                       std::optional<double> upper) {
  CheckResult r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.lower = lower;
  r.upper = upper;
  r.pass = std::isfinite(statistic) && (!lower || statistic >= *lower) && (!upper || statistic <= *upper);
  return r;
}

void to_json(nlohmann::json& j, const CheckResult& r) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  j = nlohmann::json{{"name", r.name},
                     {"statistic", num(r.statistic)},
                     {"lower", r.lower ? nlohmann::json(*r.lower) : nlohmann::json(nullptr)},
                     {"upper", r.upper ? nlohmann::json(*r.upper) : nlohmann::json(nullptr)},
                     {"pass", r.pass},
                     {"mandatory", r.mandatory},
                     {"sample_sizes", r.sample_sizes},
                     {"seeds", r.seeds},
                     {"runtime_ms", r.runtime_ms},
                     {"note", r.note}};
  nlohmann::json details = nlohmann::json::object();
  for (const auto& [k, v] : r.details) details[k] = num(v);
  j["details"] = details;
}

void to_json(nlohmann::json& j, const VerificationReport& report) {
  j = nlohmann::json{{"overall", report.overall}, {"config", report.config}, {"results", report.results}};
}

std::string format_report(const VerificationReport& report) {
  std::ostringstream out;
  out << std::setprecision(6);
  for (const auto& r : report.results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << (r.mandatory ? "* " : "  ") << r.name << "  stat=" << r.statistic;
    if (r.lower && r.upper) {
      out << " in [" << *r.lower << ", " << *r.upper << "]";
    } else if (r.lower) {
      out << " >= " << *r.lower;
    } else if (r.upper) {
      out << " <= " << *r.upper;
    }
    out << "  sizes{";
    bool first = true;
    for (const auto& [k, v] : r.sample_sizes) {
      out << (first ? "" : ", ") << k << "=" << v;
      first = false;
    }
    out << "} seeds{";
    first = true;
    for (auto s : r.seeds) {
      out << (first ? "" : ", ") << s;
      first = false;
    }
    out << "}  " << std::fixed << std::setprecision(0) << r.runtime_ms << " ms" << std::defaultfloat
        << std::setprecision(6) << "\n";
  }
  out << "overall: " << (report.overall ? "PASS" : "FAIL") << " (mandatory checks marked *)\n";
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
auto timed(Fn&& fn) {
  const auto start = Clock::now();
  auto result = fn();
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if constexpr (std::is_same_v<decltype(result), CheckResult>) {
    result.runtime_ms = ms;
  } else {
    for (auto& r : result) r.runtime_ms = ms / static_cast<double>(result.size());
  }
  return result;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::size_t index_of(const std::vector<double>& grid, double t) {
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (std::abs(grid[j] - t) < 1e-12) return j;
  return grid.size();
}

}  // namespace

// --- walk-level checks ----------------------------------------------------------

CheckResult check_local_time_identities(const IncrementLaw& law, const std::vector<std::size_t>& ns,
                                        std::size_t paths, std::uint64_t seed) {
  return timed([&] {
    std::size_t violations = 0;
    std::size_t checked = 0;
    for (std::size_t n : ns) {
      for (std::size_t p = 0; p < paths; ++p) {
        RandomStream rng(derive_seed(seed, n, StreamTag::Auxiliary), p, StreamTag::Walk);
        const auto path = sample_walk(law, n, rng);
        const auto profile = local_time(path);
        const auto table = self_intersection_table(profile);
        ++checked;

        if (profile.total() != n + 1 || profile.at(0) < 1) ++violations;
        std::uint64_t squares = 0;
        for (auto c : profile.counts()) squares += c * c;
        if (table.at(0) != squares) ++violations;
        std::uint64_t pairs = 0;
        for (Site lag = table.min_lag(); lag <= table.max_lag(); ++lag) {
          const auto v = table.at(lag);
          pairs += v;
          if (v != table.at(-lag)) ++violations;
          if (v > table.at(0)) ++violations;
        }
        if (pairs != (n + 1) * (n + 1)) ++violations;
      }
    }
    std::string label = "local-time exact identities, steps";
    for (const auto& atom : law.atoms()) label += " " + std::to_string(atom.step);
    auto r = make_check(label, static_cast<double>(violations), std::nullopt, 0.0);
    r.sample_sizes = {{"paths", checked}};
    r.seeds = {seed};
    r.note = "mass, symmetry, total pairs, alpha(n,0) = sum N^2, domination";
    return r;
  });
}

CheckResult check_second_moment_exact(const IncrementLaw& law, const std::vector<SceneryModel>& models,
                                      std::size_t n_max) {
  return timed([&] {
    double worst = 0.0;
    std::size_t cases = 0;
    for (const auto& model : models) {
      for (std::size_t n = 1; n <= n_max; ++n) {
        const auto id = second_moment_identity_exact(law, model, n);
        worst = std::max(worst, std::abs(id.lhs - id.rhs) / std::max(1.0, std::abs(id.lhs)));
        ++cases;
      }
    }
    auto r = make_check("second-moment identity (exact enumeration)", worst, std::nullopt, 1e-10);
    r.sample_sizes = {{"cases", cases}, {"n_max", n_max}};
    return r;
  });
}

namespace {

struct WalkFunctionals {
  std::vector<double> max_local;  ///< max_i N_n(i)
  std::vector<double> alpha0;
  std::vector<std::vector<double>> alpha_at_lags;  ///< [lag index][replicate]
};

WalkFunctionals walk_functionals(const IncrementLaw& law, std::size_t n, std::size_t replicates, std::uint64_t seed,
                                 const std::vector<Site>& lags, unsigned threads) {
  WalkFunctionals f;
  f.max_local.resize(replicates);
  f.alpha0.resize(replicates);
  f.alpha_at_lags.assign(lags.size(), std::vector<double>(replicates));
  parallel_for(replicates, threads, [&](std::size_t r) {
    RandomStream rng(seed, r, StreamTag::Walk);
    const auto profile = accumulate_local_time(law, n, rng);
    f.max_local[r] = static_cast<double>(max_local_time(profile));
    f.alpha0[r] = static_cast<double>(self_intersection(profile, 0));
    for (std::size_t l = 0; l < lags.size(); ++l)
      f.alpha_at_lags[l][r] = static_cast<double>(self_intersection(profile, lags[l]));
  });
  return f;
}

}  // namespace

std::vector<CheckResult> check_prop_local_time(const IncrementLaw& law, const PropLocalTimeOptions& o) {
  return timed([&] {
    std::vector<std::size_t> all = o.ns;
    all.insert(all.end(), o.holder_ns.begin(), o.holder_ns.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    std::map<std::size_t, WalkFunctionals> data;
    std::vector<std::uint64_t> seeds;
    for (std::size_t n : all) {
      const auto s = derive_seed(o.seed, n, StreamTag::Auxiliary);
      seeds.push_back(s);
      data.emplace(n, walk_functionals(law, n, o.replicates, s, o.lags, o.threads));
    }

    std::vector<CheckResult> out;

    // Medians of n^{-3/4} max N_n strictly decreasing.
    {
      std::vector<double> medians;
      for (std::size_t n : o.ns) {
        std::vector<double> v = data.at(n).max_local;
        for (auto& x : v) x /= std::pow(static_cast<double>(n), 0.75);
        medians.push_back(stats::median(v));
      }
      std::size_t bad = 0;
      for (std::size_t k = 1; k < medians.size(); ++k) bad += medians[k] < medians[k - 1] ? 0 : 1;
      auto r = make_check("local time: medians of n^{-3/4} max N_n decreasing", static_cast<double>(bad),
                          std::nullopt, 0.0);
      for (std::size_t k = 0; k < o.ns.size(); ++k) r.details["median_n" + std::to_string(o.ns[k])] = medians[k];
      out.push_back(std::move(r));
    }

    // Growth exponent of E alpha(n,0)^p.
    for (int p : {1, 2}) {
      std::vector<double> logn;
      std::vector<double> logm;
      for (std::size_t n : o.ns) {
        double m = 0.0;
        for (double a : data.at(n).alpha0) m += std::pow(a, p);
        m /= static_cast<double>(o.replicates);
        logn.push_back(std::log(static_cast<double>(n)));
        logm.push_back(std::log(m));
      }
      const double slope = stats::regression_slope(logn, logm);
      auto r = make_check("local time: slope of log E alpha(n,0)^" + std::to_string(p), slope, std::nullopt,
                          1.5 * p + 0.1);
      out.push_back(std::move(r));
    }

    // Holder ratios ||alpha(n,i) - alpha(n,j)||_2 / (n^{(3-lambda)/2} |i-j|^lambda).
    for (double lambda : o.lambdas) {
      std::vector<double> maxima;
      for (std::size_t n : o.holder_ns) {
        const auto& f = data.at(n);
        double best = 0.0;
        for (std::size_t a = 0; a < o.lags.size(); ++a) {
          for (std::size_t b = a + 1; b < o.lags.size(); ++b) {
            double ss = 0.0;
            for (std::size_t r = 0; r < o.replicates; ++r) {
              const double d = f.alpha_at_lags[a][r] - f.alpha_at_lags[b][r];
              ss += d * d;
            }
            const double l2 = std::sqrt(ss / static_cast<double>(o.replicates));
            const double denom = std::pow(static_cast<double>(n), (3.0 - lambda) / 2.0) *
                                 std::pow(static_cast<double>(std::abs(o.lags[a] - o.lags[b])), lambda);
            best = std::max(best, l2 / denom);
          }
        }
        maxima.push_back(best);
      }
      const auto [lo, hi] = std::minmax_element(maxima.begin(), maxima.end());
      auto r = make_check("local time: Holder ratio stability, lambda=" + fmt(lambda),
                          *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity(), std::nullopt, 2.0);
      for (std::size_t k = 0; k < o.holder_ns.size(); ++k)
        r.details["max_ratio_n" + std::to_string(o.holder_ns[k])] = maxima[k];
      out.push_back(std::move(r));
    }

    for (auto& r : out) {
      r.sample_sizes = {{"replicates_per_n", o.replicates}};
      r.seeds = seeds;
    }
    return out;
  });
}

CheckResult check_quadratic_functional(const IncrementLaw& law, std::size_t n, std::size_t replicates,
                                       std::uint64_t seed, const LimitConfig& limit,
                                       std::span<const double> weights) {
  return timed([&] {
    if (weights.size() != limit.times.size()) throw ConfigError("one weight per limit time is required");
    const auto indices = time_indices(n, limit.times);
    std::vector<double> walk_side(replicates);
    const double norm = std::pow(static_cast<double>(n), 1.5);
    parallel_for(replicates, limit.threads, [&](std::size_t r) {
      RandomStream rng(seed, r, StreamTag::Walk);
      const auto path = sample_walk(law, n, rng);
      std::vector<LocalTimeProfile> profiles;
      for (std::size_t idx : indices) {
        WalkPath prefix;
        prefix.positions.assign(path.positions.begin(), path.positions.begin() + static_cast<std::ptrdiff_t>(idx) + 1);
        profiles.push_back(local_time(prefix));
      }
      walk_side[r] = quadratic_form(profiles, weights) / norm;
    });
    const auto limit_side = simulate_quadratic_functional(limit, weights);
    const auto ks = ks_two_sample(walk_side, limit_side);

    std::string label = "quadratic functional KS (weights";
    for (double w : weights) label += " " + fmt(w);
    label += "; times";
    for (double t : limit.times) label += " " + fmt(t);
    label += ")";
    auto r = make_check(label, ks.p_value, 0.01, std::nullopt);
    r.details = {{"ks_D", ks.statistic},
                 {"walk_mean", stats::mean(walk_side)},
                 {"limit_mean", stats::mean(limit_side)},
                 {"walk_min", *std::min_element(walk_side.begin(), walk_side.end())},
                 {"limit_min", *std::min_element(limit_side.begin(), limit_side.end())}};
    r.sample_sizes = {{"n", n}, {"walk_replicates", replicates}, {"limit_replicates", limit.replicates}};
    r.seeds = {seed, limit.seed};
    return r;
  });
}

// --- scenery-level ------------------------------------------------------------------

CheckResult check_sigma_inf(const SceneryModel& model, double expected, double tolerance, std::size_t sample_length,
                            std::size_t k_max, std::uint64_t seed) {
  return timed([&] {
    RandomStream rng(seed, 0, StreamTag::Scenery);
    const auto summary = empirical_covariance(model, k_max, sample_length, rng);
    auto r = make_check("sigma_inf^2 estimate for " + model.name(), std::abs(summary.sigma_inf_sq / expected - 1.0),
                        std::nullopt, tolerance);
    r.details = {{"estimate", summary.sigma_inf_sq},
                 {"jackknife_se", summary.sigma_inf_sq_se},
                 {"expected", expected},
                 {"truncation_error_bound", summary.truncation_error_bound}};
    r.sample_sizes = {{"sample_length", sample_length}, {"k_max", k_max}};
    r.seeds = {seed};
    return r;
  });
}

// --- RWRS ----------------------------------------------------------------------------

CheckResult check_variance_scaling(const IncrementLaw& law, const SceneryModel& model,
                                   const std::vector<std::size_t>& ns, std::size_t replicates, std::uint64_t seed,
                                   unsigned threads) {
  return timed([&] {
    std::vector<double> logn;
    std::vector<double> logv;
    std::vector<std::uint64_t> seeds;
    CheckResult r;
    std::map<std::string, double> details;
    for (std::size_t n : ns) {
      RwrsConfig cfg;
      cfg.law = law;
      cfg.model = model;
      cfg.n = n;
      cfg.times = {1.0};
      cfg.replicates = replicates;
      cfg.seed = derive_seed(seed, n, StreamTag::Auxiliary);
      cfg.threads = threads;
      seeds.push_back(cfg.seed);
      const auto batch = simulate_rwrs(cfg);
      const double v = stats::variance(batch.raw_column(0));
      logn.push_back(std::log(static_cast<double>(n)));
      logv.push_back(std::log(v));
      details["var_n" + std::to_string(n)] = v;
    }
    r = make_check("variance scaling slope, " + model.name(), stats::regression_slope(logn, logv), 1.4, 1.6);
    r.details = details;
    r.sample_sizes = {{"replicates_per_n", replicates}};
    r.seeds = seeds;
    return r;
  });
}

std::vector<CheckResult> check_fdd_convergence(const RwrsConfig& config, const DeltaBatch& limit,
                                               double sigma_inf_sq) {
  return timed([&] {
    if (sigma_inf_sq < 0.0)
      throw NegativeLongRunVariance("sigma_inf^2 estimate is negative; the limit normalization is undefined");
    const std::size_t j1 = index_of(config.times, 1.0);
    const std::size_t l1 = index_of(limit.times, 1.0);
    if (j1 == config.times.size() || l1 == limit.times.size())
      throw ConfigError("fdd check needs t = 1 in both time grids");

    const auto batch = simulate_rwrs(config);
    const double sigma = std::sqrt(sigma_inf_sq);
    auto scaled = limit.column(l1);
    for (auto& v : scaled) v *= sigma;
    const auto walk = batch.normalized_column(j1);
    const auto ks = ks_two_sample(walk, scaled);

    std::vector<CheckResult> out;
    auto r = make_check("fdd KS at t=1, " + config.model.name(), ks.p_value, 0.01, std::nullopt);
    r.details = {{"ks_D", ks.statistic},
                 {"sigma_inf_sq", sigma_inf_sq},
                 {"rwrs_variance", stats::variance(walk)},
                 {"limit_variance", stats::variance(scaled)}};
    r.sample_sizes = {{"n", config.n}, {"rwrs_replicates", config.replicates}, {"limit_replicates", limit.replicates}};
    r.seeds = {config.seed, limit.seed};
    out.push_back(std::move(r));

    const std::size_t jh = index_of(config.times, 0.5);
    const std::size_t lh = index_of(limit.times, 0.5);
    if (jh < config.times.size() && lh < limit.times.size()) {
      const double walk_cov = stats::covariance(batch.normalized_column(jh), walk);
      const double target = sigma_inf_sq * stats::covariance(limit.column(lh), limit.column(l1));
      auto c = make_check("fdd covariance (t=1/2, t=1), " + config.model.name(), std::abs(walk_cov / target - 1.0),
                          std::nullopt, 0.15);
      c.details = {{"rwrs_cov", walk_cov}, {"limit_cov", target}};
      c.sample_sizes = out.front().sample_sizes;
      c.seeds = out.front().seeds;
      out.push_back(std::move(c));
    }
    return out;
  });
}

CheckResult check_tightness_moment(const IncrementLaw& law, const SceneryModel& model, const TightnessOptions& o) {
  return timed([&] {
    std::vector<double> maxima;
    std::vector<std::uint64_t> seeds;
    std::map<std::string, double> details;
    std::size_t pairs = 0;
    for (std::size_t n : o.ns) {
      RwrsConfig cfg;
      cfg.law = law;
      cfg.model = model;
      cfg.n = n;
      cfg.times = o.times;
      cfg.replicates = o.replicates;
      cfg.seed = derive_seed(o.seed, n, StreamTag::Auxiliary);
      cfg.threads = o.threads;
      seeds.push_back(cfg.seed);
      const auto batch = simulate_rwrs(cfg);
      double best = 0.0;
      pairs = 0;
      for (std::size_t a = 0; a < o.times.size(); ++a) {
        for (std::size_t b = a + 1; b < o.times.size(); ++b) {
          double ss = 0.0;
          for (std::size_t r = 0; r < o.replicates; ++r) {
            const double d = batch.raw_at(r, b) - batch.raw_at(r, a);
            ss += d * d;
          }
          const double moment = ss / static_cast<double>(o.replicates);
          const double ratio =
              moment / (std::pow(static_cast<double>(n), 1.5) * std::pow(o.times[b] - o.times[a], 1.5));
          best = std::max(best, ratio);
          ++pairs;
        }
      }
      maxima.push_back(best);
      details["max_ratio_n" + std::to_string(n)] = best;
    }
    const auto [lo, hi] = std::minmax_element(maxima.begin(), maxima.end());
    auto r = make_check("tightness moment stability, " + model.name(),
                        *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity(), std::nullopt, 2.0);
    r.details = details;
    r.sample_sizes = {{"replicates_per_n", o.replicates}, {"pairs", pairs}};
    r.seeds = seeds;
    return r;
  });
}

// --- limit process ----------------------------------------------------------------

CheckResult check_occupation_conservation(const LimitConfig& config) {
  return timed([&] {
    double worst = 0.0;
    for (std::size_t r = 0; r < config.replicates; ++r) {
      const auto field = simulate_bm_local_time(config, r);
      for (std::size_t j = 0; j < field.times.size(); ++j) {
        worst = std::max(worst, std::abs(field.mass(j) - field.times[j]));
        for (const auto& v : field.values[j])
          if (v < 0.0) worst = std::numeric_limits<double>::infinity();
      }
    }
    auto r = make_check("occupation conservation h*sum L_t = t", worst, std::nullopt, 1e-12);
    r.sample_sizes = {{"replicates", config.replicates}, {"times", config.times.size()}};
    r.seeds = {config.seed};
    return r;
  });
}

CheckResult check_self_intersection_constant(const DeltaBatch& batch, double tolerance) {
  return timed([&] {
    const std::size_t j = batch.times.size() - 1;
    const double t = batch.times[j];
    const double target = std::pow(t, 1.5) * brownian_self_intersection_constant();
    const double estimate = stats::mean(batch.squared_integral_column(j));
    auto r = make_check("Brownian self-intersection E int L_t^2, t=" + fmt(t), std::abs(estimate / target - 1.0),
                        std::nullopt, tolerance);
    r.details = {{"estimate", estimate}, {"target", target}};
    r.sample_sizes = {{"replicates", batch.replicates}};
    r.seeds = {batch.seed};
    return r;
  });
}

CheckResult check_self_similarity(const DeltaBatch& batch, double tolerance) {
  return timed([&] {
    std::vector<double> ratios;
    std::map<std::string, double> details;
    for (std::size_t j = 0; j < batch.times.size(); ++j) {
      const double v = stats::variance(batch.column(j));
      ratios.push_back(v / std::pow(batch.times[j], 1.5));
      details["ratio_t" + fmt(batch.times[j])] = ratios.back();
    }
    const double m = stats::mean(ratios);
    double worst = 0.0;
    for (double q : ratios) worst = std::max(worst, std::abs(q / m - 1.0));
    auto r = make_check("self-similarity Var(Delta_t)/t^{3/2}", worst, std::nullopt, tolerance);
    r.details = details;
    r.sample_sizes = {{"replicates", batch.replicates}};
    r.seeds = {batch.seed};
    return r;
  });
}

CheckResult check_delta_symmetry(const DeltaBatch& batch) {
  return timed([&] {
    const auto col = batch.column(batch.times.size() - 1);
    const double skew = stats::skewness(col);
    const double se = stats::skewness_standard_error(col);
    auto r = make_check("Delta symmetry |skewness| / SE", se > 0 ? std::abs(skew) / se : 0.0, std::nullopt, 4.0);
    r.details = {{"skewness", skew}, {"se", se}};
    r.sample_sizes = {{"replicates", batch.replicates}};
    r.seeds = {batch.seed};
    return r;
  });
}

CheckResult check_stationary_increments(const DeltaBatch& batch, double t1, double t3, double t2) {
  return timed([&] {
    const std::size_t a = index_of(batch.times, t1);
    const std::size_t b = index_of(batch.times, t3);
    const std::size_t c = index_of(batch.times, t2);
    if (a == batch.times.size() || b == batch.times.size() || c == batch.times.size())
      throw ConfigError("stationary-increment check needs its three times in the batch grid");
    const std::size_t half = batch.replicates / 2;
    std::vector<double> increments;
    std::vector<double> direct;
    for (std::size_t r = 0; r < half; ++r) increments.push_back(batch.at(r, b) - batch.at(r, a));
    for (std::size_t r = half; r < batch.replicates; ++r) direct.push_back(batch.at(r, c));
    const auto ks = ks_two_sample(increments, direct);
    auto r = make_check("stationary increments KS Delta_" + fmt(t3) + "-Delta_" + fmt(t1) + " vs Delta_" + fmt(t2),
                        ks.p_value, 0.01, std::nullopt);
    r.details = {{"ks_D", ks.statistic}};
    r.sample_sizes = {{"increment_sample", increments.size()}, {"direct_sample", direct.size()}};
    r.seeds = {batch.seed};
    return r;
  });
}

CheckResult check_a2_verdicts() {
  return timed([&] {
    std::size_t wrong = 0;
    std::map<std::string, double> details;
    for (double rho : {0.1, 0.5, 0.9, 0.99}) {
      const auto rep = check_A2(DecayBound(GeometricDecay{1.0, rho}, "check"), 0.5);
      wrong += rep.verdict ? 0 : 1;
      details["geometric_rho" + fmt(rho)] = rep.verdict;
    }
    const std::pair<double, bool> cases[] = {{2.0, true}, {1.0, false}, {1.6, true}};
    for (const auto& [a, expected] : cases) {
      const auto rep = check_A2_exists(DecayBound(PolynomialDecay{1.0, a}, "check"));
      wrong += rep.verdict == expected ? 0 : 1;
      details["polynomial_a" + fmt(a)] = rep.verdict;
    }
    auto r = make_check("(A2) verdicts", static_cast<double>(wrong), std::nullopt, 0.0);
    r.details = details;
    return r;
  });
}

// --- suite ----------------------------------------------------------------------------

VerificationReport run_verification(const VerifyOptions& options) {
  VerificationReport report;
  report.config = {{"seed", options.seed},
                   {"quick", options.quick},
                   {"calibration_seeds", options.calibration_seeds}};
  const auto law = IncrementLaw::simple();
  const std::uint64_t seed = options.seed;
  auto add = [&](CheckResult r, bool mandatory) {
    r.mandatory = mandatory;
    report.results.push_back(std::move(r));
  };
  auto sub = [&](std::uint64_t tag) { return derive_seed(seed, tag, StreamTag::Auxiliary); };

  const auto iid = SceneryModel::iid();
  const auto ar1 = SceneryModel::ar1(0.5);
  const auto doubling = SceneryModel::doubling();

  // Mandatory suite.
  add(check_local_time_identities(law, {0, 1, 2, 7, 64, 1024}, 50, sub(1)), true);
  add(check_local_time_identities(IncrementLaw({{-1, 2.0 / 3.0}, {2, 1.0 / 3.0}}), {0, 5, 64, 1024}, 50, sub(2)),
      true);
  add(check_second_moment_exact(law, {iid, ar1, SceneryModel::iterated(0.5), doubling}, 8), true);

  LimitConfig small;
  small.times = {0.25, 0.5, 0.7, 1.0};
  small.replicates = 20;
  small.seed = sub(3);
  add(check_occupation_conservation(small), true);
  add(check_variance_scaling(law, iid, {256, 1024, 4096}, 2000, sub(4), options.threads), true);

  LimitConfig limit;
  limit.times = {0.25, 0.5, 0.75, 1.0};
  limit.replicates = 5000;
  limit.seed = sub(5);
  limit.threads = options.threads;
  const auto delta = simulate_delta(limit);

  auto fdd_for = [&](const SceneryModel& model, std::uint64_t tag, bool mandatory) {
    RandomStream rng(sub(tag), 0, StreamTag::Scenery);
    const double sigma2 = empirical_covariance(model, 40, 1000000, rng).sigma_inf_sq;
    RwrsConfig cfg;
    cfg.law = law;
    cfg.model = model;
    cfg.n = 4096;
    cfg.times = {0.5, 1.0};
    cfg.replicates = 2000;
    cfg.seed = sub(tag + 1);
    cfg.threads = options.threads;
    auto results = check_fdd_convergence(cfg, delta, sigma2);
    add(results[0], mandatory);
    if (!options.quick) {
      for (std::size_t k = 1; k < results.size(); ++k) add(results[k], false);
    }
  };
  fdd_for(iid, 10, true);

  if (!options.quick) {
    fdd_for(ar1, 12, false);
    fdd_for(doubling, 14, false);
    add(check_sigma_inf(ar1, 4.0, 0.05, 1000000, 40, sub(20)), false);
    add(check_sigma_inf(doubling, 0.25, 0.05, 1000000, 40, sub(21)), false);
    add(check_variance_scaling(law, ar1, {256, 1024, 4096}, 2000, sub(22), options.threads), false);
    add(check_variance_scaling(law, doubling, {256, 1024, 4096}, 2000, sub(23), options.threads), false);
    add(check_self_intersection_constant(delta, 0.05), false);
    add(check_self_similarity(delta, 0.10), false);
    add(check_delta_symmetry(delta), false);
    add(check_stationary_increments(delta, 0.25, 0.75, 0.5), false);

    PropLocalTimeOptions prop;
    prop.seed = sub(30);
    prop.threads = options.threads;
    for (auto& r : check_prop_local_time(law, prop)) add(std::move(r), false);

    LimitConfig quad = limit;
    quad.times = {1.0};
    quad.seed = sub(31);
    const double one[] = {1.0};
    add(check_quadratic_functional(law, 4096, 1000, sub(32), quad, one), false);
    quad.times = {0.5, 1.0};
    const double two[] = {1.0, -1.0};
    add(check_quadratic_functional(law, 4096, 1000, sub(33), quad, two), false);

    TightnessOptions tight;
    tight.threads = options.threads;
    for (const auto* model : {&iid, &ar1, &doubling}) {
      tight.seed = sub(40);
      add(check_tightness_moment(law, *model, tight), false);
    }
    add(check_a2_verdicts(), false);

    const auto refine = timed([&] {
      LimitConfig coarse = limit;
      coarse.times = {1.0};
      coarse.seed = sub(50);
      const auto cmp = compare_refinement(coarse);
      auto r = make_check("refinement stability |Var fine - Var coarse| / SE",
                          std::abs(cmp.fine_variance - cmp.coarse_variance) / cmp.standard_error, std::nullopt, 1.0);
      r.details = {{"coarse_variance", cmp.coarse_variance}, {"fine_variance", cmp.fine_variance}};
      r.sample_sizes = {{"replicates", cmp.replicates}};
      r.seeds = {coarse.seed};
      return r;
    });
    add(refine, false);
  }

  if (options.calibration_seeds > 0) {
    const auto calibration = timed([&] {
      std::size_t passes = 0;
      std::vector<std::uint64_t> seeds;
      for (std::size_t s = 0; s < options.calibration_seeds; ++s) {
        const std::uint64_t master = derive_seed(seed, 1000 + s, StreamTag::Auxiliary);
        seeds.push_back(master);
        LimitConfig lc = limit;
        lc.times = {1.0};
        lc.seed = derive_seed(master, 1, StreamTag::Auxiliary);
        const auto d = simulate_delta(lc);
        RwrsConfig cfg;
        cfg.law = law;
        cfg.model = iid;
        cfg.n = 4096;
        cfg.replicates = 2000;
        cfg.seed = derive_seed(master, 2, StreamTag::Auxiliary);
        cfg.threads = options.threads;
        passes += check_fdd_convergence(cfg, d, 1.0).front().pass ? 1 : 0;
      }
      auto r = make_check("KS level calibration (i.i.d., passes out of " + std::to_string(options.calibration_seeds) +
                              ")",
                          static_cast<double>(passes), 0.9 * static_cast<double>(options.calibration_seeds),
                          std::nullopt);
      r.seeds = seeds;
      r.sample_sizes = {{"master_seeds", options.calibration_seeds}};
      return r;
    });
    add(calibration, false);
  }

  report.overall = std::all_of(report.results.begin(), report.results.end(),
                               [](const CheckResult& r) { return !r.mandatory || r.pass; });
  return report;
}

}  // namespace rwrs
