// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: rwrs_acceptance [master-seed]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rwrs/dependence.hpp"
#include "rwrs/stats.hpp"
#include "rwrs/verify.hpp"
#include "support/oracles.hpp"

using namespace rwrs;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail, double seconds) {
  std::printf("[%s] criterion %2d  %-44s %s  (%.1f s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(),
              seconds);
  std::fflush(stdout);
  failures += pass ? 0 : 1;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const IncrementLaw kSimple = IncrementLaw::simple();

std::vector<SceneryModel> three_models() {
  return {SceneryModel::iid(), SceneryModel::ar1(0.5), SceneryModel::doubling()};
}

void exact_identities(std::uint64_t seed) {
  Timer t;
  std::size_t violations = 0;
  std::size_t paths = 0;
  for (const auto& law : {kSimple, IncrementLaw({{-1, 2.0 / 3.0}, {2, 1.0 / 3.0}})}) {
    const auto r = check_local_time_identities(law, {0, 1, 7, 64, 1024, 4096}, 100, seed);
    violations += static_cast<std::size_t>(r.statistic);
    paths += r.sample_sizes.at("paths");
  }
  // Convolution table against the defining double sum, every path with n <= 12.
  for (std::size_t n = 0; n <= 12; ++n) {
    for (const auto& positions : oracle::all_simple_paths(n)) {
      WalkPath p;
      p.positions = positions;
      const auto table = self_intersection_table(local_time(p));
      for (Site lag = -Site(n) - 1; lag <= Site(n) + 1; ++lag)
        violations += table.at(lag) == oracle::alpha_double_sum(positions, lag) ? 0 : 1;
      ++paths;
    }
  }
  report(1, "exact local-time identities", violations == 0,
         fmt("%.0f violations over %.0f paths", double(violations), double(paths)), t.seconds());
}

void second_moment() {
  Timer t;
  double worst = 0.0;
  double worst_oracle = 0.0;
  const SceneryModel models[] = {SceneryModel::iid(), SceneryModel::ar1(0.5), SceneryModel::doubling()};
  for (const auto& model : models) {
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto id = second_moment_identity_exact(kSimple, model, n);
      worst = std::max(worst, std::abs(id.lhs - id.rhs) / std::max(1.0, std::abs(id.lhs)));
      if (model.name().rfind("iid", 0) == 0)
        worst_oracle = std::max(worst_oracle, std::abs(id.lhs - oracle::simple_expected_alpha0(n)) /
                                                  std::max(1.0, id.lhs));
    }
  }
  report(2, "second-moment identity (exact, n <= 8)", worst <= 1e-10 && worst_oracle <= 1e-10,
         fmt("max rel. gap %.2e, i.i.d. vs closed form %.2e", worst, worst_oracle), t.seconds());
}

void sigma_inf(std::uint64_t seed) {
  Timer t;
  const auto ar = check_sigma_inf(SceneryModel::ar1(0.5), 4.0, 0.05, 1000000, 40, derive_seed(seed, 1, StreamTag::Auxiliary));
  const auto dm = check_sigma_inf(SceneryModel::doubling(), 0.25, 0.05, 1000000, 40, derive_seed(seed, 2, StreamTag::Auxiliary));
  report(3, "sigma_inf^2 closed forms (+-5%)", ar.pass && dm.pass,
         fmt("AR(1) %.4f vs 4, doubling %.5f vs 0.25", ar.details.at("estimate"), dm.details.at("estimate")),
         t.seconds());
}

void limit_checks(std::uint64_t seed) {
  Timer t;
  LimitConfig cfg;
  cfg.dt = 1e-4;
  cfg.h = 1e-2;
  cfg.times = {0.25, 0.5, 1.0};
  cfg.replicates = 5000;
  cfg.seed = derive_seed(seed, 3, StreamTag::Auxiliary);
  const auto batch = simulate_delta(cfg);
  const double built = t.seconds();

  const double oracle_value = oracle::brownian_self_intersection_quadrature();
  const double estimate = stats::mean(batch.squared_integral_column(2));
  const double rel = std::abs(estimate / oracle_value - 1.0);
  report(4, "Brownian self-intersection constant (5%)", rel <= 0.05,
         fmt("E int L_1^2 = %.5f vs %.5f (rel. %.4f)", estimate, oracle_value, rel), built);

  Timer t5;
  const auto ss = check_self_similarity(batch, 0.10);
  report(5, "self-similarity of Delta (10%)", ss.pass,
         fmt("Var/t^1.5 = %.4f, %.4f, %.4f; max dev %.4f", ss.details.at("ratio_t0.25"), ss.details.at("ratio_t0.5"),
             ss.details.at("ratio_t1"), ss.statistic),
         t5.seconds());
}

void variance_scaling(std::uint64_t seed) {
  Timer t;
  bool pass = true;
  std::string detail;
  std::uint64_t k = 10;
  for (const auto& model : three_models()) {
    const auto r = check_variance_scaling(kSimple, model, {256, 1024, 4096}, 2000, derive_seed(seed, k++, StreamTag::Auxiliary));
    pass = pass && r.pass;
    detail += fmt("%.3f ", r.statistic);
  }
  report(6, "variance scaling slope in [1.4, 1.6]", pass, "slopes (iid, AR(1), doubling): " + detail, t.seconds());
}

void fdd_convergence(std::uint64_t seed) {
  Timer t;
  const std::size_t seeds = 20;
  const auto models = three_models();
  std::vector<std::size_t> passes(models.size(), 0);
  for (std::size_t s = 0; s < seeds; ++s) {
    const std::uint64_t master = derive_seed(seed, 100 + s, StreamTag::Auxiliary);
    LimitConfig lc;
    lc.times = {1.0};
    lc.replicates = 5000;
    lc.seed = derive_seed(master, 0, StreamTag::Auxiliary);
    const auto delta = simulate_delta(lc);
    for (std::size_t m = 0; m < models.size(); ++m) {
      RandomStream rng(master, m, StreamTag::Scenery);
      const double sigma2 = empirical_covariance(models[m], 40, 1000000, rng).sigma_inf_sq;
      RwrsConfig cfg;
      cfg.model = models[m];
      cfg.n = 4096;
      cfg.replicates = 2000;
      cfg.seed = derive_seed(master, m + 1, StreamTag::Auxiliary);
      passes[m] += check_fdd_convergence(cfg, delta, sigma2).front().pass ? 1 : 0;
    }
  }
  const bool pass = std::all_of(passes.begin(), passes.end(), [](std::size_t p) { return p >= 18; });
  report(7, "fdd KS at t=1, >= 18/20 seeds per model", pass,
         fmt("accepted (iid, AR(1), doubling): %.0f, %.0f, %.0f of 20", double(passes[0]), double(passes[1]),
             double(passes[2])),
         t.seconds());
}

void local_time_suite(std::uint64_t seed) {
  Timer t;
  PropLocalTimeOptions opts;
  opts.seed = derive_seed(seed, 20, StreamTag::Auxiliary);
  const auto results = check_prop_local_time(kSimple, opts);
  bool pass = true;
  std::string detail;
  for (const auto& r : results) {
    pass = pass && r.pass;
    detail += fmt("%.3g ", r.statistic);
  }
  LimitConfig lc;
  lc.times = {1.0};
  lc.replicates = 5000;
  lc.seed = derive_seed(seed, 21, StreamTag::Auxiliary);
  const double one[] = {1.0};
  const auto quad = check_quadratic_functional(kSimple, 4096, 1000, derive_seed(seed, 22, StreamTag::Auxiliary), lc, one);
  pass = pass && quad.pass;
  detail += fmt("| KS p %.3f", quad.statistic);
  report(8, "local-time growth, Holder and square-sum KS", pass, detail, t.seconds());
}

void a2_checker() {
  Timer t;
  bool pass = true;
  for (double rho : {0.1, 0.5, 0.9, 0.99})
    pass = pass && check_A2(DecayBound(GeometricDecay{1.0, rho}, "acceptance"), 0.5).verdict;
  const bool a2 = check_A2_exists(DecayBound(PolynomialDecay{1.0, 2.0}, "acceptance")).verdict;
  const bool a1 = check_A2_exists(DecayBound(PolynomialDecay{1.0, 1.0}, "acceptance")).verdict;
  const auto r16 = check_A2_exists(DecayBound(PolynomialDecay{1.0, 1.6}, "acceptance"));
  pass = pass && a2 && !a1 && r16.verdict && check_a2_verdicts().pass;
  report(9, "(A2) checker verdicts", pass,
         fmt("a=2: %.0f, a=1: %.0f, a=1.6: %.0f (eps %.3f), geometric eps=0.5: ok", a2, a1, r16.verdict, r16.epsilon),
         t.seconds());
}

void tightness(std::uint64_t seed) {
  Timer t;
  bool pass = true;
  std::string detail;
  TightnessOptions opts;
  opts.seed = derive_seed(seed, 30, StreamTag::Auxiliary);
  for (const auto& model : three_models()) {
    const auto r = check_tightness_moment(kSimple, model, opts);
    pass = pass && r.pass && r.sample_sizes.at("pairs") == 6;
    detail += fmt("%.3f ", r.statistic);
  }
  report(10, "tightness moment ratio stable (factor 2)", pass, "max/min across n (iid, AR(1), doubling): " + detail,
         t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240607;
  std::printf("rwrs acceptance suite, master seed %llu\n", static_cast<unsigned long long>(seed));
  Timer total;
  exact_identities(seed);
  second_moment();
  sigma_inf(seed);
  limit_checks(seed);
  variance_scaling(seed);
  fdd_convergence(seed);
  local_time_suite(seed);
  a2_checker();
  tightness(seed);
  std::printf("%d of 10 criteria failed, %.1f s\n", failures, total.seconds());
  return failures == 0 ? 0 : 1;
}
