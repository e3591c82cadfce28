#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rwrs/random.hpp"

namespace rwrs {

using Site = std::int64_t;

struct Atom {
  Site step;
  double probability;
};

/// Finite-support centered step distribution on the integers.
///
/// Construction validates the law: probabilities in (0, 1] summing to 1,
/// zero mean (both within 1e-12), distinct steps, at least two atoms.
/// Throws ConfigError otherwise.
class IncrementLaw {
 public:
  explicit IncrementLaw(std::vector<Atom> atoms);

  /// +1 and -1 with probability 1/2 each.
  static IncrementLaw simple();

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool contains(Site step) const;
  Site max_abs_step() const;
  double variance() const;
  Site sample(RandomStream& rng) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

/// S_0 = 0, S_1, ..., S_n.
struct WalkPath {
  std::vector<Site> positions{0};

  std::size_t steps() const { return positions.size() - 1; }
};

WalkPath sample_walk(const IncrementLaw& law, std::size_t n, RandomStream& rng);

/// Throws ConfigError unless S_0 = 0 and every step lies in the support.
void validate_path(const WalkPath& path, const IncrementLaw& law);

/// Occupation counts N_n(i) stored densely over the visited hull.
class LocalTimeProfile {
 public:
  LocalTimeProfile() = default;
  LocalTimeProfile(Site left, std::vector<std::uint64_t> counts);

  /// Records one visit; grows the hull as needed.
  void add_visit(Site site);

  bool empty() const { return counts_.empty(); }
  Site left() const { return left_; }
  Site right() const { return left_ + static_cast<Site>(counts_.size()) - 1; }
  std::size_t width() const { return counts_.size(); }
  std::span<const std::uint64_t> counts() const { return counts_; }
  /// N(site); zero outside the hull.
  std::uint64_t at(Site site) const;
  /// n + 1 for a profile built from an n-step path.
  std::uint64_t total() const { return total_; }

 private:
  Site left_ = 0;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

LocalTimeProfile local_time(const WalkPath& path);

/// Occupation counts of an n-step walk without materializing the path.
LocalTimeProfile accumulate_local_time(const IncrementLaw& law, std::size_t n,
                                       RandomStream& rng);

/// alpha(n, lag) = sum_j N(j) N(j - lag).
std::uint64_t self_intersection(const LocalTimeProfile& profile, Site lag);

/// alpha(n, .) over every lag with a nonzero value.
class AlphaTable {
 public:
  AlphaTable() = default;
  AlphaTable(Site min_lag, std::vector<std::uint64_t> values)
      : min_lag_(min_lag), values_(std::move(values)) {}

  Site min_lag() const { return min_lag_; }
  Site max_lag() const { return min_lag_ + static_cast<Site>(values_.size()) - 1; }
  std::span<const std::uint64_t> values() const { return values_; }
  std::uint64_t at(Site lag) const;

 private:
  Site min_lag_ = 0;
  std::vector<std::uint64_t> values_;
};

/// Self-convolution of the profile, O(width^2).
AlphaTable self_intersection_table(const LocalTimeProfile& profile);

std::uint64_t max_local_time(const LocalTimeProfile& profile);

/// n^{-3/2} sum_i (sum_k theta_k N_{n_k}(i))^2 style quadratic form over
/// several profiles of the same walk, without the normalization.
double quadratic_form(std::span<const LocalTimeProfile> profiles,
                      std::span<const double> weights);

enum class PropertyPStatus { Holds, Inconclusive };

struct PropertyPReport {
  PropertyPStatus status = PropertyPStatus::Inconclusive;
  std::optional<int> witness_q;
  std::string reachable_check;

  bool holds() const { return status == PropertyPStatus::Holds; }
};

/// Sufficient test for property (P): some truncation level q <= q_max whose
/// truncated support has both signs and gcd 1, confirmed by breadth-first
/// reachability of every site in [-reach_bound, reach_bound].
PropertyPReport check_property_P(const IncrementLaw& law, int q_max, int reach_bound);

}  // namespace rwrs
