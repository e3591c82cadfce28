#include "rwrs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rwrs::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double covariance(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("covariance of unequal samples");
  if (xs.size() < 2) return 0.0;
  const double mx = mean(xs);
  const double my = mean(ys);
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (xs[i] - mx) * (ys[i] - my);
  return s / static_cast<double>(xs.size() - 1);
}

double quantile(std::vector<double> xs, double p) {
  if (xs.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] + frac * (xs[hi] - xs[lo]);
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

namespace {

struct CentralMoments {
  double m2 = 0, m3 = 0, m4 = 0, m6 = 0;
};

CentralMoments central_moments(std::span<const double> xs) {
  const double m = mean(xs);
  CentralMoments c;
  for (double x : xs) {
    const double d = x - m;
    const double d2 = d * d;
    c.m2 += d2;
    c.m3 += d2 * d;
    c.m4 += d2 * d2;
    c.m6 += d2 * d2 * d2;
  }
  const auto n = static_cast<double>(xs.size());
  c.m2 /= n;
  c.m3 /= n;
  c.m4 /= n;
  c.m6 /= n;
  return c;
}

}  // namespace

double skewness(std::span<const double> xs) {
  const auto c = central_moments(xs);
  if (c.m2 <= 0.0) return 0.0;
  return c.m3 / std::pow(c.m2, 1.5);
}

double skewness_standard_error(std::span<const double> xs) {
  // Var(mean(z^3)) with z standardized, ignoring the O(1/n) mean correction.
  const auto c = central_moments(xs);
  if (c.m2 <= 0.0) return 0.0;
  const double skew = c.m3 / std::pow(c.m2, 1.5);
  const double z6 = c.m6 / (c.m2 * c.m2 * c.m2);
  return std::sqrt(std::max(z6 - skew * skew, 0.0) / static_cast<double>(xs.size()));
}

double variance_standard_error(std::span<const double> xs) {
  const auto c = central_moments(xs);
  const auto n = static_cast<double>(xs.size());
  return std::sqrt(std::max(c.m4 - c.m2 * c.m2, 0.0) / n);
}

double regression_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("regression needs two or more paired points");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("regression on constant abscissae");
  return sxy / sxx;
}

}  // namespace rwrs::stats
