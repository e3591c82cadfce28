#include "rwrs/walk.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "rwrs/error.hpp"

namespace rwrs {

namespace {
constexpr double kLawTolerance = 1e-12;
}

IncrementLaw::IncrementLaw(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.size() < 2) throw ConfigError("increment law needs at least two atoms");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.step < b.step; });
  double total = 0.0;
  double first_moment = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!(a.probability > 0.0 && a.probability <= 1.0))
      throw ConfigError("increment probabilities must lie in (0, 1]");
    if (i > 0 && atoms_[i - 1].step == a.step)
      throw ConfigError("increment law has a repeated step " + std::to_string(a.step));
    total += a.probability;
    first_moment += static_cast<double>(a.step) * a.probability;
  }
  if (std::abs(total - 1.0) > kLawTolerance)
    throw ConfigError("increment probabilities do not sum to 1");
  if (std::abs(first_moment) > kLawTolerance)
    throw ConfigError("increment law is not centered");

  cumulative_.reserve(atoms_.size());
  double acc = 0.0;
  for (const Atom& a : atoms_) {
    acc += a.probability;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

IncrementLaw IncrementLaw::simple() { return IncrementLaw({{-1, 0.5}, {1, 0.5}}); }

bool IncrementLaw::contains(Site step) const {
  return std::any_of(atoms_.begin(), atoms_.end(),
                     [step](const Atom& a) { return a.step == step; });
}

Site IncrementLaw::max_abs_step() const {
  Site m = 0;
  for (const Atom& a : atoms_) m = std::max(m, std::abs(a.step));
  return m;
}

double IncrementLaw::variance() const {
  double v = 0.0;
  for (const Atom& a : atoms_) v += static_cast<double>(a.step * a.step) * a.probability;
  return v;
}

Site IncrementLaw::sample(RandomStream& rng) const {
  const double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < cumulative_.size(); ++i) {
    if (u < cumulative_[i]) return atoms_[i].step;
  }
  return atoms_.back().step;
}

WalkPath sample_walk(const IncrementLaw& law, std::size_t n, RandomStream& rng) {
  WalkPath path;
  path.positions.resize(n + 1);
  path.positions[0] = 0;
  for (std::size_t k = 1; k <= n; ++k) path.positions[k] = path.positions[k - 1] + law.sample(rng);
  return path;
}

void validate_path(const WalkPath& path, const IncrementLaw& law) {
  if (path.positions.empty() || path.positions.front() != 0)
    throw ConfigError("walk path must start at 0");
  for (std::size_t k = 1; k < path.positions.size(); ++k) {
    if (!law.contains(path.positions[k] - path.positions[k - 1]))
      throw ConfigError("walk step " + std::to_string(k) + " is outside the support");
  }
}

// --- local time -----------------------------------------------------------

LocalTimeProfile::LocalTimeProfile(Site left, std::vector<std::uint64_t> counts)
    : left_(left), counts_(std::move(counts)) {
  total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

void LocalTimeProfile::add_visit(Site site) {
  if (counts_.empty()) {
    left_ = site;
    counts_.assign(1, 0);
  } else if (site < left_) {
    const auto grow = static_cast<std::size_t>(left_ - site);
    counts_.insert(counts_.begin(), grow, 0);
    left_ = site;
  } else if (site > right()) {
    counts_.resize(static_cast<std::size_t>(site - left_) + 1, 0);
  }
  ++counts_[static_cast<std::size_t>(site - left_)];
  ++total_;
}

std::uint64_t LocalTimeProfile::at(Site site) const {
  if (counts_.empty() || site < left_ || site > right()) return 0;
  return counts_[static_cast<std::size_t>(site - left_)];
}

LocalTimeProfile local_time(const WalkPath& path) {
  const auto [lo, hi] = std::minmax_element(path.positions.begin(), path.positions.end());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(*hi - *lo) + 1, 0);
  for (Site s : path.positions) ++counts[static_cast<std::size_t>(s - *lo)];
  return LocalTimeProfile(*lo, std::move(counts));
}

LocalTimeProfile accumulate_local_time(const IncrementLaw& law, std::size_t n,
                                       RandomStream& rng) {
  // Pre-size the hull to a few standard deviations so growth is rare.
  const auto guess = static_cast<Site>(4.0 * std::sqrt(law.variance() * static_cast<double>(n)) + 1);
  LocalTimeProfile profile(-guess, std::vector<std::uint64_t>(2 * static_cast<std::size_t>(guess) + 1, 0));
  Site s = 0;
  profile.add_visit(s);
  for (std::size_t k = 1; k <= n; ++k) {
    s += law.sample(rng);
    profile.add_visit(s);
  }
  // Trim the unvisited margin.
  const auto counts = profile.counts();
  const auto first = std::find_if(counts.begin(), counts.end(), [](auto c) { return c != 0; });
  const auto last = std::find_if(counts.rbegin(), counts.rend(), [](auto c) { return c != 0; }).base();
  return LocalTimeProfile(profile.left() + (first - counts.begin()),
                          std::vector<std::uint64_t>(first, last));
}

std::uint64_t self_intersection(const LocalTimeProfile& profile, Site lag) {
  const auto counts = profile.counts();
  const auto width = static_cast<Site>(counts.size());
  const Site a = std::abs(lag);
  if (a >= width) return 0;
  std::uint64_t sum = 0;
  for (Site j = a; j < width; ++j) sum += counts[static_cast<std::size_t>(j)] * counts[static_cast<std::size_t>(j - a)];
  return sum;
}

std::uint64_t AlphaTable::at(Site lag) const {
  if (values_.empty() || lag < min_lag_ || lag > max_lag()) return 0;
  return values_[static_cast<std::size_t>(lag - min_lag_)];
}

AlphaTable self_intersection_table(const LocalTimeProfile& profile) {
  const auto width = static_cast<Site>(profile.width());
  if (width == 0) return {};
  std::vector<std::uint64_t> values(static_cast<std::size_t>(2 * width - 1), 0);
  for (Site lag = 0; lag < width; ++lag) {
    const std::uint64_t v = self_intersection(profile, lag);
    values[static_cast<std::size_t>(width - 1 + lag)] = v;
    values[static_cast<std::size_t>(width - 1 - lag)] = v;
  }
  return AlphaTable(-(width - 1), std::move(values));
}

std::uint64_t max_local_time(const LocalTimeProfile& profile) {
  const auto counts = profile.counts();
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

double quadratic_form(std::span<const LocalTimeProfile> profiles, std::span<const double> weights) {
  if (profiles.size() != weights.size())
    throw ConfigError("quadratic form needs one weight per profile");
  Site lo = 0;
  Site hi = 0;
  bool any = false;
  for (const auto& p : profiles) {
    if (p.empty()) continue;
    lo = any ? std::min(lo, p.left()) : p.left();
    hi = any ? std::max(hi, p.right()) : p.right();
    any = true;
  }
  if (!any) return 0.0;
  double total = 0.0;
  for (Site i = lo; i <= hi; ++i) {
    double v = 0.0;
    for (std::size_t k = 0; k < profiles.size(); ++k) v += weights[k] * static_cast<double>(profiles[k].at(i));
    total += v * v;
  }
  return total;
}

// --- property (P) ---------------------------------------------------------

PropertyPReport check_property_P(const IncrementLaw& law, int q_max, int reach_bound) {
  if (q_max < 1 || reach_bound < 1) throw ConfigError("q_max and reach_bound must be >= 1");

  PropertyPReport report;
  std::ostringstream log;
  for (int q = 1; q <= q_max; ++q) {
    std::vector<Site> support;
    for (const Atom& a : law.atoms()) {
      if (std::abs(a.step) <= q) support.push_back(a.step);
    }
    if (support.empty()) continue;  // P(X in [-q, q]) = 0: P_q undefined

    const bool positive = std::any_of(support.begin(), support.end(), [](Site s) { return s > 0; });
    const bool negative = std::any_of(support.begin(), support.end(), [](Site s) { return s < 0; });
    Site g = 0;
    for (Site s : support) g = std::gcd(g, std::abs(s));
    if (!positive || !negative || g != 1) {
      log << "q=" << q << ": sufficient condition fails (both signs=" << (positive && negative)
          << ", gcd=" << g << "); ";
      continue;
    }

    // Any multiset of steps summing to x can be ordered so that partial sums
    // stay within [min(0,x) - q, max(0,x) + q], so this box is exhaustive.
    const Site box = reach_bound + q;
    std::vector<char> seen(static_cast<std::size_t>(2 * box + 1), 0);
    std::deque<Site> frontier{0};
    seen[static_cast<std::size_t>(box)] = 1;
    while (!frontier.empty()) {
      const Site x = frontier.front();
      frontier.pop_front();
      for (Site s : support) {
        const Site y = x + s;
        if (y < -box || y > box) continue;
        auto& mark = seen[static_cast<std::size_t>(y + box)];
        if (!mark) {
          mark = 1;
          frontier.push_back(y);
        }
      }
    }
    Site missing = 0;
    for (Site x = -reach_bound; x <= reach_bound; ++x) missing += seen[static_cast<std::size_t>(x + box)] ? 0 : 1;
    if (missing == 0) {
      report.status = PropertyPStatus::Holds;
      report.witness_q = q;
      log << "q=" << q << ": every site of [-" << reach_bound << ", " << reach_bound
          << "] reachable by breadth-first search over the truncated support";
      report.reachable_check = log.str();
      return report;
    }
    log << "q=" << q << ": " << missing << " sites unreachable; ";
  }
  log << "inconclusive for q <= " << q_max;
  report.reachable_check = log.str();
  return report;
}

}  // namespace rwrs
