#pragma once

#include <span>
#include <vector>

namespace rwrs::stats {

double mean(std::span<const double> xs);
/// Unbiased sample variance; 0 for fewer than two values.
double variance(std::span<const double> xs);
double covariance(std::span<const double> xs, std::span<const double> ys);
/// Linear-interpolated quantile, p in [0, 1].
double quantile(std::vector<double> xs, double p);
double median(std::vector<double> xs);
double skewness(std::span<const double> xs);
/// Delta-method standard error of the sample skewness.
double skewness_standard_error(std::span<const double> xs);
/// Standard error of the unbiased variance estimate (uses the fourth moment).
double variance_standard_error(std::span<const double> xs);
/// Least-squares slope of y on x.
double regression_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace rwrs::stats
