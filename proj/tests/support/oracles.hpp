#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

/// alpha(n, lag) = #{(k, l) : S_k - S_l = lag}, straight from the definition.
inline std::uint64_t alpha_double_sum(const std::vector<std::int64_t>& positions, std::int64_t lag) {
  std::uint64_t count = 0;
  for (auto a : positions)
    for (auto b : positions)
      if (a - b == lag) ++count;
  return count;
}

/// N(i) by counting.
inline std::map<std::int64_t, std::uint64_t> visit_counts(const std::vector<std::int64_t>& positions) {
  std::map<std::int64_t, std::uint64_t> counts;
  for (auto s : positions) ++counts[s];
  return counts;
}

/// E int L_1(x)^2 dx = 2 int_0^1 int_s^1 p_{t-s}(0) dt ds, p_u(0) = (2 pi u)^{-1/2}.
/// The inner integral is taken in closed form after u = v^2, the outer one
/// by composite Simpson.
inline double brownian_self_intersection_quadrature(int outer = 20000) {
  auto inner_integral = [](double upper) { return 2.0 * std::sqrt(upper) / std::sqrt(2.0 * std::numbers::pi); };
  const double ds = 1.0 / outer;
  double s = 0.0;
  for (int k = 0; k <= outer; ++k) {
    const double w = (k == 0 || k == outer) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    s += w * inner_integral(1.0 - k * ds);
  }
  return 2.0 * s * ds / 3.0;
}

/// Every site in [-bound, bound] is reachable from 0 by finite sums of steps,
/// found by breadth-first search in a box wide enough to route around.
inline bool reaches_all(const std::vector<std::int64_t>& steps, std::int64_t bound) {
  std::int64_t reach = 0;
  for (auto s : steps) reach = std::max(reach, std::abs(s));
  const std::int64_t box = bound + 2 * reach;
  std::set<std::int64_t> seen{0};
  std::deque<std::int64_t> queue{0};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (auto s : steps) {
      const auto y = x + s;
      if (std::abs(y) <= box && seen.insert(y).second) queue.push_back(y);
    }
  }
  for (std::int64_t i = -bound; i <= bound; ++i)
    if (!seen.count(i)) return false;
  return true;
}

/// P(S_m = 0) for the simple walk.
inline double simple_return_probability(std::size_t m) {
  if (m % 2 == 1) return 0.0;
  // log binom(m, m/2) - m log 2
  return std::exp(std::lgamma(m + 1.0) - 2.0 * std::lgamma(m / 2.0 + 1.0) - m * std::log(2.0));
}

/// E alpha(n, 0) = (n + 1) + 2 sum_{d=1}^n (n + 1 - d) P(S_d = 0) for the simple walk.
inline double simple_expected_alpha0(std::size_t n) {
  double e = static_cast<double>(n + 1);
  for (std::size_t d = 1; d <= n; ++d) e += 2.0 * static_cast<double>(n + 1 - d) * simple_return_probability(d);
  return e;
}

/// AR(1) with unit innovations: r(k) = rho^k / (1 - rho^2).
inline double ar1_covariance(double rho, std::size_t k) { return std::pow(rho, static_cast<double>(k)) / (1.0 - rho * rho); }

/// x - 1/2 under the doubling map: r(k) = 2^{-k} / 12.
inline double doubling_covariance(std::size_t k) { return std::ldexp(1.0 / 12.0, -static_cast<int>(k)); }

/// Every 2^n path of the simple walk.
inline std::vector<std::vector<std::int64_t>> all_simple_paths(std::size_t n) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::int64_t> p{0};
    for (std::size_t k = 0; k < n; ++k) p.push_back(p.back() + ((mask >> k) & 1 ? 1 : -1));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace oracle
