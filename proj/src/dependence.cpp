#include "rwrs/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rwrs/error.hpp"

namespace rwrs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTermFloor = 1e-15;
constexpr std::size_t kMaxTerms = 200000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

DecayBound::DecayBound(std::variant<GeometricDecay, PolynomialDecay> family, std::string provenance)
    : family_(family), provenance_(std::move(provenance)) {
  std::visit(overloaded{
                 [](const GeometricDecay& g) {
                   if (!(g.scale >= 0.0) || !std::isfinite(g.scale)) throw ConfigError("decay scale must be >= 0");
                   if (!(g.rate > 0.0 && g.rate < 1.0)) throw ConfigError("geometric decay rate must lie in (0, 1)");
                 },
                 [](const PolynomialDecay& p) {
                   if (!(p.scale >= 0.0) || !std::isfinite(p.scale)) throw ConfigError("decay scale must be >= 0");
                   if (!(p.exponent > 0.0)) throw ConfigError("polynomial decay exponent must be positive");
                 },
             },
             family_);
}

double DecayBound::scale() const {
  return std::visit([](const auto& f) { return f.scale; }, family_);
}

double DecayBound::operator()(double x) const {
  return std::visit(overloaded{
                        [x](const GeometricDecay& g) { return g.scale * std::pow(g.rate, x); },
                        [x](const PolynomialDecay& p) { return p.scale * std::pow(x, -p.exponent); },
                    },
                    family_);
}

double DecayBound::monotone_threshold() const {
  if (vanishing()) return 1.0;
  return std::visit(overloaded{
                        // d/dx log(x^{3/2} rate^x) = 3/(2x) - log(1/rate) <= 0
                        [](const GeometricDecay& g) { return std::max(1.0, 1.5 / std::log(1.0 / g.rate)); },
                        [](const PolynomialDecay& p) { return p.exponent >= 1.5 ? 1.0 : kInf; },
                    },
                    family_);
}

double DecayBound::redominated(double x) const {
  const double x0 = monotone_threshold();
  if (!std::isfinite(x0) || x >= x0) return (*this)(x);
  return std::max((*this)(x), (*this)(x0) * std::pow(x0 / x, 1.5));
}

void to_json(nlohmann::json& j, const DecayBound& bound) {
  j = std::visit(overloaded{
                     [](const GeometricDecay& g) {
                       return nlohmann::json{{"family", "geometric"}, {"C", g.scale}, {"rho", g.rate}};
                     },
                     [](const PolynomialDecay& p) {
                       return nlohmann::json{{"family", "polynomial"}, {"C", p.scale}, {"a", p.exponent}};
                     },
                 },
                 bound.family());
  j["provenance"] = bound.provenance();
}

void to_json(nlohmann::json& j, const A2Report& r) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  j = nlohmann::json{{"epsilon", r.epsilon},
                     {"monotone_ok", r.monotone_ok},
                     {"monotone_threshold", finite_or_null(r.monotone_threshold)},
                     {"redominated", r.redominated},
                     {"series_value", r.series_value},
                     {"tail_bound", finite_or_null(r.tail_bound)},
                     {"terms", r.terms},
                     {"verdict", r.verdict},
                     {"note", r.note}};
}

// --- theta_2 bounds ---------------------------------------------------------

DecayBound theta_bound(const SceneryModel& model, std::uint64_t seed) {
  return std::visit(
      overloaded{
          [](const ZeroScenery&) {
            return DecayBound(GeometricDecay{0.0, 0.5}, "degenerate scenery: theta_2(n) = 0");
          },
          [](const IidScenery&) {
            return DecayBound(GeometricDecay{0.0, 0.5},
                              "independent scenery: theta_2(n) = 0 for n >= 1 (C = 0 convention)");
          },
          [](const LinearProcessScenery& m) {
            // delta_2(i) = ||eps_0 - eps_0'||_2 sum_{j >= i} |a_j| with independent
            // copies, so ||eps_0 - eps_0'||_2 = sqrt(2) ||eps_0||_2.
            const double diff = std::sqrt(2.0 * law_variance(m.innovation));
            return std::visit(
                overloaded{
                    [&](const GeometricCoefficients& g) {
                      const double r = std::abs(g.rho);
                      return DecayBound(GeometricDecay{diff / (1.0 - r), r},
                                        "causal linear process, geometric coefficients: "
                                        "sum_{j>=i} |a_j| = |rho|^i / (1 - |rho|)");
                    },
                    [&](const PowerCoefficients& p) {
                      const double b = p.exponent;
                      return DecayBound(PolynomialDecay{diff / (b - 1.0), b - 1.0},
                                        "causal linear process, power coefficients: "
                                        "sum_{j>=i} (j+1)^{-b} <= i^{1-b} / (b - 1)");
                    },
                },
                m.coefficients);
          },
          [seed](const IteratedFunctionScenery& m) {
            double var = 0.0;
            std::string how;
            if (m.transfer == Transfer::Linear) {
              var = law_variance(m.innovation) / (1.0 - m.kappa * m.kappa);
              how = "closed-form stationary variance";
            } else {
              RandomStream rng(seed);
              const auto window = sample_scenery(SceneryModel(m), 0, 199999, rng);
              double mean = 0.0;
              for (double v : window.values) mean += v;
              mean /= static_cast<double>(window.length());
              for (double v : window.values) var += (v - mean) * (v - mean);
              var /= static_cast<double>(window.length() - 1);
              how = "simulated stationary variance (2e5 samples)";
            }
            // ||xi_0 - xi_0^*||_2 = sqrt(2 Var xi_0) for an independent copy.
            return DecayBound(GeometricDecay{std::sqrt(2.0 * var), m.kappa},
                              "iterated random function: delta_2(i) = kappa^i ||xi_0 - xi_0^*||_2, " + how);
          },
          [](const DoublingMapScenery& m) {
            return DecayBound(GeometricDecay{1.0, m.rho},
                              "doubling map: theta_2(i) <= C rho^i with C unknown, set to 1");
          },
      },
      model.variant());
}

// --- (A2) -------------------------------------------------------------------

A2Report check_A2(const DecayBound& g, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");

  A2Report report;
  report.epsilon = epsilon;
  report.monotone_threshold = g.monotone_threshold();

  if (g.vanishing()) {
    report.monotone_ok = true;
    report.verdict = true;
    report.note = "g vanishes identically; the series is zero";
    return report;
  }

  auto term = [&](std::size_t i) {
    const double arg = std::exp2(static_cast<double>(i) * epsilon);
    return std::exp2(1.5 * static_cast<double>(i)) * g.redominated(arg);
  };

  std::visit(
      overloaded{
          [&](const GeometricDecay&) {
            report.monotone_ok = true;
            report.redominated = report.monotone_threshold > 1.0;
            const double x0 = report.monotone_threshold;
            double sum = 0.0;
            std::size_t i = 0;
            for (; i < kMaxTerms; ++i) {
              const double t = term(i);
              sum += t;
              const double arg = std::exp2(static_cast<double>(i) * epsilon);
              if (arg < x0) continue;
              // Beyond x0 the term ratios are non-increasing in i.
              const double ratio = t > 0.0 ? term(i + 1) / t : 0.0;
              if (t < kTermFloor && ratio < 1.0) {
                report.tail_bound = t * ratio / (1.0 - ratio);
                break;
              }
            }
            if (i == kMaxTerms) report.tail_bound = kInf;
            report.series_value = sum;
            report.terms = std::min(i + 1, kMaxTerms);
            report.note = report.redominated
                              ? "x^{3/2} g(x) increases below x0; g re-dominated there by g(x0) (x0/x)^{3/2}"
                              : "x^{3/2} g(x) non-increasing on [1, inf)";
          },
          [&](const PolynomialDecay& p) {
            report.monotone_ok = p.exponent >= 1.5;
            const double q = std::exp2(1.5 - p.exponent * epsilon);
            double sum = 0.0;
            std::size_t i = 0;
            if (q < 1.0) {
              for (; i < kMaxTerms; ++i) {
                const double t = p.scale * std::pow(q, static_cast<double>(i));
                sum += t;
                if (t < kTermFloor) {
                  report.tail_bound = t * q / (1.0 - q);
                  break;
                }
              }
              if (i == kMaxTerms) report.tail_bound = kInf;
              report.terms = std::min(i + 1, kMaxTerms);
            } else {
              for (; i < 64; ++i) sum += p.scale * std::pow(q, static_cast<double>(i));
              report.tail_bound = kInf;
              report.terms = 64;
            }
            report.series_value = sum;
            report.note = std::string(report.monotone_ok ? "" : "x^{3/2} g(x) increasing (a < 3/2); ") +
                          (q < 1.0 ? "series ratio 2^{3/2 - a eps} < 1" : "series diverges: 2^{3/2 - a eps} >= 1");
          },
      },
      g.family());

  report.verdict = report.monotone_ok && std::isfinite(report.tail_bound);
  return report;
}

A2Report check_A2_exists(const DecayBound& g) {
  const double epsilon = std::visit(overloaded{
                                        [](const GeometricDecay&) { return 0.5; },
                                        // Convergence needs a * eps > 3/2; take the midpoint
                                        // of (3/(2a), 1) when that interval is nonempty.
                                        [](const PolynomialDecay& p) {
                                          return p.exponent > 1.5 ? 0.5 * (1.5 / p.exponent + 1.0) : 0.99;
                                        },
                                    },
                                    g.family());
  return check_A2(g, epsilon);
}

// --- weighted covariance series ----------------------------------------------

WeightedCovSum weighted_cov_sum(const SceneryModel& model, double lambda, std::size_t lag_cap, std::uint64_t seed) {
  if (!(lambda >= 0.0 && lambda < 0.5)) throw ConfigError("lambda must lie in [0, 1/2)");

  WeightedCovSum out;
  out.lambda = lambda;
  out.lag_cap = lag_cap;

  std::vector<double> r(lag_cap + 1);
  out.analytic = analytic_covariance(model, 0).has_value();
  if (out.analytic) {
    for (std::size_t k = 0; k <= lag_cap; ++k) r[k] = *analytic_covariance(model, k);
  } else {
    RandomStream rng(seed);
    const std::size_t length = std::max<std::size_t>(1000000, 100 * (lag_cap + 1));
    r = empirical_covariance(model, lag_cap, length, rng).lags;
  }

  out.partial_sum = r[0];
  for (std::size_t k = 1; k <= lag_cap; ++k)
    out.partial_sum += 2.0 * std::pow(static_cast<double>(k), lambda) * std::abs(r[k]);

  const DecayBound g = theta_bound(model, seed);
  const double norm = std::sqrt(std::max(r[0], 0.0));
  if (g.vanishing() || norm == 0.0) {
    out.tail_bound = 0.0;
    return out;
  }

  const auto first = static_cast<double>(lag_cap + 1);
  double tail = std::visit(
      overloaded{
          [&](const GeometricDecay& d) {
            // f(k) = k^lambda rate^k; once (1 + 1/k)^lambda rate < 1 the tail is
            // dominated by a geometric series.
            double sum = 0.0;
            double k = first;
            for (std::size_t guard = 0; guard < kMaxTerms; ++guard, k += 1.0) {
              const double q = std::pow(1.0 + 1.0 / k, lambda) * d.rate;
              const double fk = std::pow(k, lambda) * std::pow(d.rate, k);
              if (q < 1.0) return sum + fk / (1.0 - q);
              sum += fk;
            }
            return kInf;
          },
          [&](const PolynomialDecay& p) {
            // f(k) = k^{lambda - a} decreasing; sum_{k > K} f(k) <= int_K^inf f.
            const double e = p.exponent - lambda;
            if (e <= 1.0) return kInf;
            if (lag_cap == 0) return 1.0 + 1.0 / (e - 1.0);
            return std::pow(static_cast<double>(lag_cap), 1.0 - e) / (e - 1.0);
          },
      },
      g.family());
  out.tail_bound = 2.0 * norm * g.scale() * tail;
  return out;
}

}  // namespace rwrs
