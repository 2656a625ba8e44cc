#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "extremes/types.hpp"

namespace extremes {

/// Shapes with |xi| below this are evaluated with the Gumbel (xi = 0) formulas.
inline constexpr double kGumbelThreshold = 1e-8;

/// Location, scale and shape of a GEV distribution for block maxima or
/// block minima.
///
/// For Maxima the distribution function is
///   G(y) = exp(-{1 + xi (y - mu) / sigma}_+^(-1/xi)).
/// For Minima the same kernel is evaluated at (mu - y), which gives
/// P(minimum > y); the distribution function of the minimum is its
/// complement. With that convention a larger mu means warmer minima.
struct GevParams {
  double mu = 0.0;
  double sigma = 1.0;
  double xi = 0.0;
  Orientation orientation = Orientation::Maxima;

  friend bool operator==(const GevParams&, const GevParams&) = default;
};

/// Throws std::domain_error unless sigma > 0 and all fields are finite.
void validate(const GevParams& params);

/// Closed support interval [lower, upper]; infinite ends where unbounded.
std::pair<double, double> support(const GevParams& params);

/// r-year return level query; block length b (years) gives p = b / r.
struct ReturnLevelQuery {
  double return_period = 0.0;
  double block_length = 1.0;

  [[nodiscard]] double p() const noexcept { return block_length / return_period; }
};

double cdf_maxima(const GevParams& params, double y);
double survival_minima(const GevParams& params, double y);

/// P(Y <= y) for either orientation.
double cdf(const GevParams& params, double y);
/// P(Y > y) for either orientation.
double survival(const GevParams& params, double y);

/// Log density; -infinity outside the support.
double log_density(const GevParams& params, double y);
double density(const GevParams& params, double y);

/// Inverse of cdf() for prob in (0, 1).
double quantile(const GevParams& params, double prob);

/// Level exceeded (Maxima) or undercut (Minima) with probability p = b / r
/// per block.
double return_level(const GevParams& params, const ReturnLevelQuery& query);
double return_level(const GevParams& params, double return_period, double block_length = 1.0);

/// Negative log-likelihood of the extremes; +infinity when any observation
/// lies outside the support. Orientations must match.
double neg_log_likelihood(const GevParams& params, const BlockExtremes& extremes);

/// `n` inverse-CDF draws, reproducible for a given seed. The result has
/// block length 1 and the orientation of `params`.
BlockExtremes sample(const GevParams& params, std::size_t n, std::uint64_t seed);

namespace detail {

/// Negative log-likelihood of the maxima kernel. Out-of-support points give
/// +infinity, or with `penalize` a finite 1e10 plus the squared violation.
double maxima_nll(double mu, double sigma, double xi, std::span<const double> values, bool penalize);

}  // namespace detail

}  // namespace extremes
