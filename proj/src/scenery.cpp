#include "rwrs/scenery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rwrs/error.hpp"

namespace rwrs {

namespace {

constexpr double kTailTarget = 1e-8;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_law(const InnovationLaw& law) {
  std::visit(overloaded{
                 [](const NormalLaw& l) {
                   if (!(l.sd > 0.0) || !std::isfinite(l.sd)) throw ConfigError("normal sd must be positive");
                 },
                 [](const UniformLaw& l) {
                   if (!(l.half_width > 0.0) || !std::isfinite(l.half_width))
                     throw ConfigError("uniform half-width must be positive");
                 },
                 [](const RademacherLaw& l) {
                   if (!(l.scale > 0.0) || !std::isfinite(l.scale))
                     throw ConfigError("rademacher scale must be positive");
                 },
             },
             law);
}

double coefficient(const CoefficientRule& rule, std::size_t j) {
  return std::visit(overloaded{
                        [j](const GeometricCoefficients& g) { return std::pow(g.rho, static_cast<double>(j)); },
                        [j](const PowerCoefficients& p) {
                          return std::pow(static_cast<double>(j + 1), -p.exponent);
                        },
                    },
                    rule);
}

std::size_t truncation_lag_for(const CoefficientRule& rule, double innovation_sd) {
  const double lag = std::visit(
      overloaded{
          [&](const GeometricCoefficients& g) {
            // sd * |rho|^{J+1} / (1 - |rho|) < target
            const double r = std::abs(g.rho);
            if (r == 0.0) return 0.0;
            return std::max(0.0, std::ceil(std::log(kTailTarget * (1.0 - r) / innovation_sd) / std::log(r)));
          },
          [&](const PowerCoefficients& p) {
            // sum_{j > J} (j+1)^{-b} <= (J+1)^{1-b} / (b-1)
            const double b = p.exponent;
            const double x = std::pow(innovation_sd / (kTailTarget * (b - 1.0)), 1.0 / (b - 1.0));
            return std::max(0.0, std::ceil(x));
          },
      },
      rule);
  return static_cast<std::size_t>(std::min(lag, 1e15));
}

std::size_t burn_in_for(double kappa) {
  return static_cast<std::size_t>(std::ceil(std::log(kTailTarget) / std::log(kappa))) + 1;
}

std::string law_name(const InnovationLaw& law) {
  return std::visit(overloaded{
                        [](const NormalLaw& l) { return "normal(sd=" + std::to_string(l.sd) + ")"; },
                        [](const UniformLaw& l) { return "uniform(half_width=" + std::to_string(l.half_width) + ")"; },
                        [](const RademacherLaw& l) { return "rademacher(scale=" + std::to_string(l.scale) + ")"; },
                    },
                    law);
}

}  // namespace

double law_variance(const InnovationLaw& law) {
  return std::visit(overloaded{
                        [](const NormalLaw& l) { return l.sd * l.sd; },
                        [](const UniformLaw& l) { return l.half_width * l.half_width / 3.0; },
                        [](const RademacherLaw& l) { return l.scale * l.scale; },
                    },
                    law);
}

double draw(const InnovationLaw& law, RandomStream& rng) {
  return std::visit(overloaded{
                        [&](const NormalLaw& l) { return l.sd * rng.normal(); },
                        [&](const UniformLaw& l) { return l.half_width * (2.0 * rng.uniform() - 1.0); },
                        [&](const RademacherLaw& l) { return (rng.bits() >> 63) ? l.scale : -l.scale; },
                    },
                    law);
}

// --- model ------------------------------------------------------------------

SceneryModel::SceneryModel(SceneryVariant variant) : variant_(std::move(variant)) {
  std::visit(overloaded{
                 [](const ZeroScenery&) {},
                 [](const IidScenery& m) { validate_law(m.marginal); },
                 [](const LinearProcessScenery& m) {
                   validate_law(m.innovation);
                   std::visit(overloaded{
                                  [](const GeometricCoefficients& g) {
                                    if (!(std::abs(g.rho) < 1.0)) throw ConfigError("geometric coefficients need |rho| < 1");
                                  },
                                  [](const PowerCoefficients& p) {
                                    if (!(p.exponent > 1.0))
                                      throw ConfigError("power coefficients need exponent > 1 (summability)");
                                  },
                              },
                              m.coefficients);
                 },
                 [](const IteratedFunctionScenery& m) {
                   validate_law(m.innovation);
                   if (!(m.kappa > 0.0 && m.kappa < 1.0)) throw ConfigError("contraction factor kappa must lie in (0, 1)");
                 },
                 [](const DoublingMapScenery& m) {
                   if (m.window_bits < 1 || m.window_bits > 64) throw ConfigError("bit window must be in [1, 64]");
                   if (!(m.rho > 0.0 && m.rho < 1.0)) throw ConfigError("doubling-map decay rate must lie in (0, 1)");
                 },
             },
             variant_);
}

SceneryModel SceneryModel::zero() { return SceneryModel(ZeroScenery{}); }

SceneryModel SceneryModel::iid(InnovationLaw marginal) { return SceneryModel(IidScenery{marginal}); }

SceneryModel SceneryModel::linear(CoefficientRule rule, InnovationLaw innovation) {
  validate_law(innovation);
  // Validate the rule before computing the lag from it.
  SceneryModel probe(LinearProcessScenery{rule, innovation, 0});
  const std::size_t lag = truncation_lag_for(rule, std::sqrt(law_variance(innovation)));
  return SceneryModel(LinearProcessScenery{rule, innovation, lag});
}

SceneryModel SceneryModel::ar1(double rho, double sd) {
  return linear(GeometricCoefficients{rho}, NormalLaw{sd});
}

SceneryModel SceneryModel::iterated(double kappa, Transfer transfer, InnovationLaw innovation) {
  SceneryModel probe(IteratedFunctionScenery{kappa, transfer, innovation, 0});
  return SceneryModel(IteratedFunctionScenery{kappa, transfer, innovation, burn_in_for(kappa)});
}

SceneryModel SceneryModel::doubling(Observable observable, unsigned window_bits) {
  return SceneryModel(DoublingMapScenery{observable, window_bits, 0.5});
}

std::string SceneryModel::name() const {
  return std::visit(
      overloaded{
          [](const ZeroScenery&) { return std::string("zero"); },
          [](const IidScenery& m) { return "iid " + law_name(m.marginal); },
          [](const LinearProcessScenery& m) {
            const std::string rule = std::visit(
                overloaded{
                    [](const GeometricCoefficients& g) { return "a_j=rho^j, rho=" + std::to_string(g.rho); },
                    [](const PowerCoefficients& p) { return "a_j=(j+1)^-b, b=" + std::to_string(p.exponent); },
                },
                m.coefficients);
            return "linear(" + rule + ", " + law_name(m.innovation) + ", J=" + std::to_string(m.truncation_lag) + ")";
          },
          [](const IteratedFunctionScenery& m) {
            return std::string("iterated(") + (m.transfer == Transfer::Linear ? "linear" : "tanh") +
                   ", kappa=" + std::to_string(m.kappa) + ", " + law_name(m.innovation) + ")";
          },
          [](const DoublingMapScenery& m) {
            return std::string("doubling(") + (m.observable == Observable::Centered ? "x-1/2" : "cos(2 pi x)") +
                   ", W=" + std::to_string(m.window_bits) + ")";
          },
      },
      variant_);
}

// --- JSON -------------------------------------------------------------------

namespace {

nlohmann::json law_to_json(const InnovationLaw& law) {
  return std::visit(overloaded{
                        [](const NormalLaw& l) { return nlohmann::json{{"law", "normal"}, {"sd", l.sd}}; },
                        [](const UniformLaw& l) {
                          return nlohmann::json{{"law", "uniform"}, {"half_width", l.half_width}};
                        },
                        [](const RademacherLaw& l) {
                          return nlohmann::json{{"law", "rademacher"}, {"scale", l.scale}};
                        },
                    },
                    law);
}

InnovationLaw law_from_json(const nlohmann::json& j) {
  const auto kind = j.at("law").get<std::string>();
  if (kind == "normal") return NormalLaw{j.value("sd", 1.0)};
  if (kind == "uniform") return UniformLaw{j.value("half_width", 1.0)};
  if (kind == "rademacher") return RademacherLaw{j.value("scale", 1.0)};
  throw ConfigError("unknown innovation law '" + kind + "'");
}

}  // namespace

void to_json(nlohmann::json& j, const SceneryModel& model) {
  j = std::visit(
      overloaded{
          [](const ZeroScenery&) { return nlohmann::json{{"family", "zero"}}; },
          [](const IidScenery& m) { return nlohmann::json{{"family", "iid"}, {"marginal", law_to_json(m.marginal)}}; },
          [](const LinearProcessScenery& m) {
            nlohmann::json rule = std::visit(
                overloaded{
                    [](const GeometricCoefficients& g) { return nlohmann::json{{"rule", "geometric"}, {"rho", g.rho}}; },
                    [](const PowerCoefficients& p) { return nlohmann::json{{"rule", "power"}, {"exponent", p.exponent}}; },
                },
                m.coefficients);
            return nlohmann::json{{"family", "linear"},
                                  {"coefficients", rule},
                                  {"innovation", law_to_json(m.innovation)},
                                  {"truncation_lag", m.truncation_lag}};
          },
          [](const IteratedFunctionScenery& m) {
            return nlohmann::json{{"family", "iterated"},
                                  {"kappa", m.kappa},
                                  {"transfer", m.transfer == Transfer::Linear ? "linear" : "tanh"},
                                  {"innovation", law_to_json(m.innovation)},
                                  {"burn_in", m.burn_in}};
          },
          [](const DoublingMapScenery& m) {
            return nlohmann::json{{"family", "doubling"},
                                  {"observable", m.observable == Observable::Centered ? "centered" : "cosine"},
                                  {"window_bits", m.window_bits},
                                  {"rho", m.rho}};
          },
      },
      model.variant());
}

SceneryModel scenery_from_json(const nlohmann::json& j) {
  try {
    const auto family = j.at("family").get<std::string>();
    if (family == "zero") return SceneryModel::zero();
    if (family == "iid") return SceneryModel::iid(law_from_json(j.at("marginal")));
    if (family == "linear") {
      const auto& c = j.at("coefficients");
      const auto rule_name = c.at("rule").get<std::string>();
      CoefficientRule rule;
      if (rule_name == "geometric") {
        rule = GeometricCoefficients{c.at("rho").get<double>()};
      } else if (rule_name == "power") {
        rule = PowerCoefficients{c.at("exponent").get<double>()};
      } else {
        throw ConfigError("unknown coefficient rule '" + rule_name + "'");
      }
      auto model = SceneryModel::linear(rule, law_from_json(j.at("innovation")));
      if (j.contains("truncation_lag")) {
        auto v = std::get<LinearProcessScenery>(model.variant());
        v.truncation_lag = j.at("truncation_lag").get<std::size_t>();
        return SceneryModel(v);
      }
      return model;
    }
    if (family == "iterated") {
      const auto transfer = j.value("transfer", std::string("linear"));
      if (transfer != "linear" && transfer != "tanh") throw ConfigError("unknown transfer '" + transfer + "'");
      auto model = SceneryModel::iterated(j.at("kappa").get<double>(),
                                          transfer == "linear" ? Transfer::Linear : Transfer::Tanh,
                                          law_from_json(j.at("innovation")));
      if (j.contains("burn_in")) {
        auto v = std::get<IteratedFunctionScenery>(model.variant());
        v.burn_in = j.at("burn_in").get<std::size_t>();
        return SceneryModel(v);
      }
      return model;
    }
    if (family == "doubling") {
      const auto obs = j.value("observable", std::string("centered"));
      if (obs != "centered" && obs != "cosine") throw ConfigError("unknown observable '" + obs + "'");
      DoublingMapScenery v{obs == "centered" ? Observable::Centered : Observable::Cosine,
                           j.value("window_bits", 53u), j.value("rho", 0.5)};
      return SceneryModel(v);
    }
    throw ConfigError("unknown scenery family '" + family + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed scenery document: ") + e.what());
  }
}

// --- sampling ---------------------------------------------------------------

namespace {

void check_cap(std::size_t needed, std::size_t cap) {
  if (needed > cap)
    throw MemoryCapError("scenery window needs " + std::to_string(needed) + " buffered values, cap is " +
                         std::to_string(cap));
}

}  // namespace

SceneryWindow sample_scenery(const SceneryModel& model, Site left, Site right, RandomStream& rng,
                             std::size_t memory_cap) {
  if (left > right) throw ConfigError("scenery window needs left <= right");
  const auto width = static_cast<std::size_t>(right - left) + 1;
  SceneryWindow window{left, right, {}};

  std::visit(
      overloaded{
          [&](const ZeroScenery&) {
            check_cap(width, memory_cap);
            window.values.assign(width, 0.0);
          },
          [&](const IidScenery& m) {
            check_cap(width, memory_cap);
            window.values.resize(width);
            for (auto& v : window.values) v = draw(m.marginal, rng);
          },
          [&](const LinearProcessScenery& m) {
            const std::size_t lag = m.truncation_lag;
            check_cap(width + lag, memory_cap);
            window.values.resize(width);
            if (const auto* g = std::get_if<GeometricCoefficients>(&m.coefficients)) {
              // Recursion from zero at index left - J - 1: every value keeps at
              // least the first J + 1 terms of the series.
              double x = 0.0;
              for (std::size_t i = 0; i < lag; ++i) x = g->rho * x + draw(m.innovation, rng);
              for (auto& v : window.values) {
                x = g->rho * x + draw(m.innovation, rng);
                v = x;
              }
            } else {
              std::vector<double> coeff(lag + 1);
              for (std::size_t j = 0; j <= lag; ++j) coeff[j] = coefficient(m.coefficients, j);
              std::vector<double> eps(width + lag);
              for (auto& e : eps) e = draw(m.innovation, rng);
              // eps[t] is the innovation at index left - J + t.
              for (std::size_t i = 0; i < width; ++i) {
                double s = 0.0;
                const std::size_t t = i + lag;
                for (std::size_t j = 0; j <= lag; ++j) s += coeff[j] * eps[t - j];
                window.values[i] = s;
              }
            }
          },
          [&](const IteratedFunctionScenery& m) {
            const bool exact = m.transfer == Transfer::Linear && std::holds_alternative<NormalLaw>(m.innovation);
            check_cap(width + (exact ? 0 : m.burn_in), memory_cap);
            window.values.resize(width);
            auto step = [&](double x) {
              const double fx = m.transfer == Transfer::Linear ? x : std::tanh(x);
              return m.kappa * fx + draw(m.innovation, rng);
            };
            double x = 0.0;
            if (exact) {
              // Stationary law N(0, s^2 / (1 - kappa^2)).
              const double s = std::get<NormalLaw>(m.innovation).sd;
              x = s / std::sqrt(1.0 - m.kappa * m.kappa) * rng.normal();
              window.values[0] = x;
              for (std::size_t i = 1; i < width; ++i) window.values[i] = x = step(x);
            } else {
              x = draw(m.innovation, rng);
              for (std::size_t i = 0; i < m.burn_in; ++i) x = step(x);
              for (auto& v : window.values) v = x = step(x);
            }
          },
          [&](const DoublingMapScenery& m) {
            check_cap(width, memory_cap);
            window.values.resize(width);
            const unsigned w = m.window_bits;
            const std::uint64_t mask = w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
            std::uint64_t word = 0;
            unsigned left_in_word = 0;
            auto next_bit = [&]() -> std::uint64_t {
              if (left_in_word == 0) {
                word = rng.bits();
                left_in_word = 64;
              }
              --left_in_word;
              return (word >> left_in_word) & 1u;
            };
            // register holds the binary digits b_i .. b_{i+W-1} of x_i.
            std::uint64_t reg = 0;
            for (unsigned b = 0; b < w; ++b) reg = (reg << 1) | next_bit();
            const double cell = std::ldexp(1.0, -static_cast<int>(w));
            for (std::size_t i = 0; i < width; ++i) {
              if (i > 0) reg = ((reg << 1) & mask) | next_bit();
              // Cell midpoint keeps the observable mean exact.
              const double x = (static_cast<double>(reg) + 0.5) * cell;
              window.values[i] = m.observable == Observable::Centered ? x - 0.5
                                                                      : std::cos(2.0 * std::numbers::pi * x);
            }
          },
      },
      model.variant());
  return window;
}

// --- covariance ---------------------------------------------------------------

std::optional<double> analytic_covariance(const SceneryModel& model, std::size_t lag) {
  const auto k = static_cast<double>(lag);
  return std::visit(
      overloaded{
          [](const ZeroScenery&) -> std::optional<double> { return 0.0; },
          [&](const IidScenery& m) -> std::optional<double> { return lag == 0 ? law_variance(m.marginal) : 0.0; },
          [&](const LinearProcessScenery& m) -> std::optional<double> {
            if (const auto* g = std::get_if<GeometricCoefficients>(&m.coefficients)) {
              return law_variance(m.innovation) * std::pow(g->rho, k) / (1.0 - g->rho * g->rho);
            }
            // sum_j a_j a_{j+k}; the remainder past M is below
            // sum_{j > M} (j+1)^{-2b} <= M^{1-2b} / (2b - 1) <= 1e-12.
            const double b = std::get<PowerCoefficients>(m.coefficients).exponent;
            const double terms = std::ceil(std::pow(1e12 / (2.0 * b - 1.0), 1.0 / (2.0 * b - 1.0)));
            if (terms > 1e7) return std::nullopt;
            double sum = 0.0;
            for (double j = terms; j >= 0.0; j -= 1.0) sum += std::pow(j + 1.0, -b) * std::pow(j + k + 1.0, -b);
            return law_variance(m.innovation) * sum;
          },
          [&](const IteratedFunctionScenery& m) -> std::optional<double> {
            if (m.transfer != Transfer::Linear) return std::nullopt;
            return law_variance(m.innovation) * std::pow(m.kappa, k) / (1.0 - m.kappa * m.kappa);
          },
          [&](const DoublingMapScenery& m) -> std::optional<double> {
            if (m.observable == Observable::Centered) return std::ldexp(1.0 / 12.0, -static_cast<int>(lag));
            // cos(2 pi x) is orthogonal to cos(2 pi 2^k x) for k >= 1.
            return lag == 0 ? 0.5 : 0.0;
          },
      },
      model.variant());
}

std::optional<double> analytic_sigma_inf_sq(const SceneryModel& model) {
  return std::visit(
      overloaded{
          [](const ZeroScenery&) -> std::optional<double> { return 0.0; },
          [](const IidScenery& m) -> std::optional<double> { return law_variance(m.marginal); },
          [](const LinearProcessScenery& m) -> std::optional<double> {
            // sum_k r(k) = s^2 (sum_j a_j)^2
            const double s2 = law_variance(m.innovation);
            return std::visit(overloaded{
                                  [&](const GeometricCoefficients& g) { return s2 / ((1 - g.rho) * (1 - g.rho)); },
                                  [&](const PowerCoefficients& p) {
                                    const double z = std::riemann_zeta(p.exponent);
                                    return s2 * z * z;
                                  },
                              },
                              m.coefficients);
          },
          [](const IteratedFunctionScenery& m) -> std::optional<double> {
            if (m.transfer != Transfer::Linear) return std::nullopt;
            return law_variance(m.innovation) / ((1 - m.kappa) * (1 - m.kappa));
          },
          [](const DoublingMapScenery& m) -> std::optional<double> {
            return m.observable == Observable::Centered ? 0.25 : 0.5;
          },
      },
      model.variant());
}

std::optional<double> covariance_tail_bound(const SceneryModel& model, std::size_t k_max) {
  const auto next = static_cast<double>(k_max + 1);
  return std::visit(
      overloaded{
          [](const ZeroScenery&) -> std::optional<double> { return 0.0; },
          [](const IidScenery&) -> std::optional<double> { return 0.0; },
          [&](const LinearProcessScenery& m) -> std::optional<double> {
            const double s2 = law_variance(m.innovation);
            return std::visit(overloaded{
                                  [&](const GeometricCoefficients& g) {
                                    const double r = std::abs(g.rho);
                                    return 2.0 * s2 * std::pow(r, next) / ((1 - r * r) * (1 - r));
                                  },
                                  [&](const PowerCoefficients& p) {
                                    // |r(k)| <= s^2 zeta(b) (k+1)^{-b}
                                    const double b = p.exponent;
                                    return 2.0 * s2 * std::riemann_zeta(b) * std::pow(next, 1.0 - b) / (b - 1.0);
                                  },
                              },
                              m.coefficients);
          },
          [&](const IteratedFunctionScenery& m) -> std::optional<double> {
            // Var xi <= s^2 / (1 - kappa^2); |r(k)| <= sqrt(2) Var xi kappa^k.
            const double var = law_variance(m.innovation) / (1 - m.kappa * m.kappa);
            return 2.0 * std::sqrt(2.0) * var * std::pow(m.kappa, next) / (1 - m.kappa);
          },
          [&](const DoublingMapScenery& m) -> std::optional<double> {
            if (m.observable == Observable::Cosine) return 0.0;
            return 2.0 * std::ldexp(1.0 / 12.0, -static_cast<int>(k_max));
          },
      },
      model.variant());
}

CovarianceSummary autocovariance(std::span<const double> xs, std::size_t k_max, std::size_t blocks) {
  const std::size_t n = xs.size();
  if (n <= k_max + 1) throw ConfigError("sample too short for the requested lags");
  blocks = std::clamp<std::size_t>(blocks, 2, n);

  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);

  const std::size_t lags = k_max + 1;
  const std::size_t block_len = n / blocks;
  // sums[g * lags + k]: lagged products whose first index lies in block g.
  std::vector<double> sums(blocks * lags, 0.0);
  std::vector<double> block_sizes(blocks, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t g = std::min(t / block_len, blocks - 1);
    block_sizes[g] += 1.0;
    const double dt = xs[t] - mean;
    const std::size_t top = std::min(k_max, n - 1 - t);
    double* row = &sums[g * lags];
    for (std::size_t k = 0; k <= top; ++k) row[k] += dt * (xs[t + k] - mean);
  }

  std::vector<double> totals(lags, 0.0);
  for (std::size_t g = 0; g < blocks; ++g)
    for (std::size_t k = 0; k < lags; ++k) totals[k] += sums[g * lags + k];

  CovarianceSummary out;
  out.sample_length = n;
  out.lags.resize(lags);
  for (std::size_t k = 0; k < lags; ++k) out.lags[k] = totals[k] / static_cast<double>(n);
  out.sigma_inf_sq = out.lags[0];
  for (std::size_t k = 1; k < lags; ++k) out.sigma_inf_sq += 2.0 * out.lags[k];

  // Delete-a-block jackknife.
  std::vector<double> jk_lag(blocks * lags);
  std::vector<double> jk_sigma(blocks);
  for (std::size_t g = 0; g < blocks; ++g) {
    const double kept = static_cast<double>(n) - block_sizes[g];
    double sigma = 0.0;
    for (std::size_t k = 0; k < lags; ++k) {
      const double r = (totals[k] - sums[g * lags + k]) / kept;
      jk_lag[g * lags + k] = r;
      sigma += k == 0 ? r : 2.0 * r;
    }
    jk_sigma[g] = sigma;
  }
  const double factor = static_cast<double>(blocks - 1) / static_cast<double>(blocks);
  auto jackknife_se = [&](auto value_of) {
    double m = 0.0;
    for (std::size_t g = 0; g < blocks; ++g) m += value_of(g);
    m /= static_cast<double>(blocks);
    double ss = 0.0;
    for (std::size_t g = 0; g < blocks; ++g) ss += (value_of(g) - m) * (value_of(g) - m);
    return std::sqrt(factor * ss);
  };
  out.standard_errors.resize(lags);
  for (std::size_t k = 0; k < lags; ++k)
    out.standard_errors[k] = jackknife_se([&](std::size_t g) { return jk_lag[g * lags + k]; });
  out.sigma_inf_sq_se = jackknife_se([&](std::size_t g) { return jk_sigma[g]; });

  if (out.sigma_inf_sq < 0.0)
    throw NegativeLongRunVariance("long-run variance estimate is negative (" + std::to_string(out.sigma_inf_sq) +
                                  "); the model is invalid or the lag cap too small");
  return out;
}

CovarianceSummary empirical_covariance(const SceneryModel& model, std::size_t k_max, std::size_t sample_length,
                                       RandomStream& rng) {
  if (sample_length <= k_max + 1) throw ConfigError("sample_length must exceed k_max");
  const auto window = sample_scenery(model, 0, static_cast<Site>(sample_length) - 1, rng);
  auto out = autocovariance(window.values, k_max);
  out.truncation_error_bound = covariance_tail_bound(model, k_max).value_or(
      std::numeric_limits<double>::infinity());
  return out;
}

}  // namespace rwrs
