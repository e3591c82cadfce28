#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include <json.hpp>

#include "rwrs/scenery.hpp"

namespace rwrs {

/// g(x) = scale * rate^x.
struct GeometricDecay {
  double scale = 1.0;
  double rate = 0.5;
};

/// g(x) = scale * x^{-exponent}.
struct PolynomialDecay {
  double scale = 1.0;
  double exponent = 2.0;
};

/// Dominating function g for the theta_2 coefficients of a scenery.
///
/// A zero scale is allowed only as the convention for sceneries with
/// theta_2(n) = 0 for every n >= 1.
class DecayBound {
 public:
  DecayBound(std::variant<GeometricDecay, PolynomialDecay> family, std::string provenance);

  const std::variant<GeometricDecay, PolynomialDecay>& family() const { return family_; }
  const std::string& provenance() const { return provenance_; }
  double scale() const;
  bool vanishing() const { return scale() == 0.0; }

  double operator()(double x) const;

  /// Smallest x >= 1 beyond which x^{3/2} g(x) is non-increasing; infinity
  /// if it never is.
  double monotone_threshold() const;

  /// g~(x) = max(g(x), g(x0) (x0/x)^{3/2}) for x < x0, g(x) otherwise.
  /// Dominates g and satisfies the monotonicity requirement verbatim.
  double redominated(double x) const;

 private:
  std::variant<GeometricDecay, PolynomialDecay> family_;
  std::string provenance_;
};

void to_json(nlohmann::json& j, const DecayBound& bound);

struct A2Report {
  double epsilon = 0.0;
  bool monotone_ok = false;
  double monotone_threshold = 1.0;
  bool redominated = false;
  double series_value = 0.0;  ///< partial sum of 2^{3i/2} g(2^{i eps})
  double tail_bound = 0.0;    ///< bound on the remaining terms; infinity if divergent
  std::size_t terms = 0;
  bool verdict = false;
  std::string note;
};

void to_json(nlohmann::json& j, const A2Report& report);

/// theta_2 dominating function of a scenery, from the model's construction.
/// Iterated-function models without a closed-form stationary variance use a
/// seeded simulation of ||xi_0 - xi_0^*||_2.
DecayBound theta_bound(const SceneryModel& model, std::uint64_t seed = 0x5eed);

/// (A2) at a fixed epsilon. Throws ConfigError unless 0 < epsilon < 1.
A2Report check_A2(const DecayBound& g, double epsilon);

/// (A2) with an existentially chosen epsilon: the report carries the
/// epsilon that was tried.
A2Report check_A2_exists(const DecayBound& g);

struct WeightedCovSum {
  double lambda = 0.0;
  std::size_t lag_cap = 0;
  double partial_sum = 0.0;  ///< sum_{|k| <= K} |k|^lambda |r(k)|
  double tail_bound = 0.0;   ///< bound on the |k| > K remainder
  bool analytic = true;      ///< covariances exact (else simulated)
};

/// Weighted covariance series for 0 <= lambda < 1/2 (ConfigError otherwise).
/// Uses closed-form covariances when available, a seeded empirical estimate
/// otherwise; the tail is bounded through |r(k)| <= ||xi_0||_2 g(k).
WeightedCovSum weighted_cov_sum(const SceneryModel& model, double lambda, std::size_t lag_cap,
                                std::uint64_t seed = 0x5eed);

}  // namespace rwrs
