#pragma once

#include <span>
#include <vector>

namespace extremes::stats {

double mean(std::span<const double> x);

/// Sample standard deviation with denominator N-1; 0 for fewer than two values.
double sample_sd(std::span<const double> x);

/// Empirical quantile with linear interpolation between order statistics
/// (Hyndman-Fan type 7, the R default). `x` need not be sorted.
double quantile(std::span<const double> x, double prob);

double median(std::span<const double> x);

/// Lag-1 autocorrelation about the sample mean.
double lag1_autocorrelation(std::span<const double> x);

}  // namespace extremes::stats
