#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rwrs/random.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

// --- innovation / marginal laws (all centered) -----------------------------

struct NormalLaw {
  double sd = 1.0;
};
/// Uniform on [-half_width, half_width].
struct UniformLaw {
  double half_width = 1.0;
};
/// +scale or -scale with probability 1/2.
struct RademacherLaw {
  double scale = 1.0;
};
using InnovationLaw = std::variant<NormalLaw, UniformLaw, RademacherLaw>;

double law_variance(const InnovationLaw& law);
double draw(const InnovationLaw& law, RandomStream& rng);

// --- scenery families -------------------------------------------------------

/// a_j = rho^j.
struct GeometricCoefficients {
  double rho = 0.5;
};
/// a_j = (j + 1)^{-exponent}, exponent > 1.
struct PowerCoefficients {
  double exponent = 3.0;
};
using CoefficientRule = std::variant<GeometricCoefficients, PowerCoefficients>;

enum class Transfer {
  Linear,  ///< xi_n = kappa * xi_{n-1} + eps_n
  Tanh,    ///< xi_n = kappa * tanh(xi_{n-1}) + eps_n
};

enum class Observable {
  Centered,  ///< h(x) = x - 1/2
  Cosine,    ///< h(x) = cos(2 pi x)
};

struct ZeroScenery {};

struct IidScenery {
  InnovationLaw marginal;
};

/// xi_i = sum_{j <= J} a_j eps_{i-j}.
struct LinearProcessScenery {
  CoefficientRule coefficients;
  InnovationLaw innovation;
  std::size_t truncation_lag = 0;
};

/// xi_n = F(xi_{n-1}, eps_n) with F kappa-Lipschitz in its first argument.
struct IteratedFunctionScenery {
  double kappa = 0.5;
  Transfer transfer = Transfer::Linear;
  InnovationLaw innovation;
  std::size_t burn_in = 0;
};

/// xi_i = h(T^i x) for the doubling map T, x uniform on [0, 1).
struct DoublingMapScenery {
  Observable observable = Observable::Centered;
  unsigned window_bits = 53;
  /// Decay rate exposed for dependence bounds.
  double rho = 0.5;
};

using SceneryVariant = std::variant<ZeroScenery, IidScenery, LinearProcessScenery,
                                    IteratedFunctionScenery, DoublingMapScenery>;

/// Validated description of a stationary centered scenery.
class SceneryModel {
 public:
  explicit SceneryModel(SceneryVariant variant);

  static SceneryModel zero();
  static SceneryModel iid(InnovationLaw marginal = NormalLaw{});
  /// Linear process; truncation lag chosen so the neglected tail
  /// sum_{j > J} |a_j| * ||eps||_2 stays below 1e-8.
  static SceneryModel linear(CoefficientRule rule, InnovationLaw innovation = NormalLaw{});
  static SceneryModel ar1(double rho, double sd = 1.0);
  /// Burn-in chosen so kappa^B < 1e-8.
  static SceneryModel iterated(double kappa, Transfer transfer = Transfer::Linear,
                               InnovationLaw innovation = NormalLaw{});
  static SceneryModel doubling(Observable observable = Observable::Centered,
                               unsigned window_bits = 53);

  const SceneryVariant& variant() const { return variant_; }
  std::string name() const;
  bool degenerate() const { return std::holds_alternative<ZeroScenery>(variant_); }

 private:
  SceneryVariant variant_;
};

void to_json(nlohmann::json& j, const SceneryModel& model);
SceneryModel scenery_from_json(const nlohmann::json& j);

/// Values xi_left..xi_right.
struct SceneryWindow {
  Site left = 0;
  Site right = -1;
  std::vector<double> values;

  std::size_t length() const { return values.size(); }
  double at(Site site) const { return values[static_cast<std::size_t>(site - left)]; }
};

/// Default cap on the number of doubles buffered to produce one window.
inline constexpr std::size_t kDefaultMemoryCap = std::size_t{1} << 27;

/// Stationary window of the scenery. Throws MemoryCapError when the window
/// plus its innovation/burn-in buffer exceeds memory_cap values.
SceneryWindow sample_scenery(const SceneryModel& model, Site left, Site right, RandomStream& rng,
                             std::size_t memory_cap = kDefaultMemoryCap);

/// Exact r(k) = E(xi_0 xi_k), or nullopt when no closed form is known.
/// Power coefficients are summed to a 1e-12 remainder (nullopt when that
/// takes more than 1e7 terms).
std::optional<double> analytic_covariance(const SceneryModel& model, std::size_t lag);

/// Upper bound on sum_{|k| > K} |r(k)| from the model's closed-form decay;
/// nullopt when unavailable without simulation.
std::optional<double> covariance_tail_bound(const SceneryModel& model, std::size_t k_max);

struct CovarianceSummary {
  std::vector<double> lags;             ///< r(0..K)
  std::vector<double> standard_errors;  ///< jackknife SE per lag
  double sigma_inf_sq = 0.0;            ///< r(0) + 2 sum_{k=1}^K r(k)
  double sigma_inf_sq_se = 0.0;
  double truncation_error_bound = 0.0;  ///< bound on the neglected |k| > K terms
  std::size_t sample_length = 0;
};

/// Biased autocovariances of a sample with delete-a-block jackknife errors.
/// Throws NegativeLongRunVariance if the long-run variance estimate is
/// negative.
CovarianceSummary autocovariance(std::span<const double> xs, std::size_t k_max,
                                 std::size_t blocks = 50);

CovarianceSummary empirical_covariance(const SceneryModel& model, std::size_t k_max,
                                       std::size_t sample_length, RandomStream& rng);

/// sum_{k in Z} r(k) in closed form, when available.
std::optional<double> analytic_sigma_inf_sq(const SceneryModel& model);

}  // namespace rwrs
