#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extremes/gev.hpp"
#include "extremes/types.hpp"

namespace extremes {

enum class FitMethod { ML, PWM };

constexpr std::string_view to_string(FitMethod m) noexcept { return m == FitMethod::ML ? "ml" : "pwm"; }

struct FitResult {
  GevParams params;
  FitMethod method = FitMethod::ML;
  /// Negative log-likelihood at `params` (+inf if a point is outside the support).
  double nll = 0.0;
  bool converged = false;
  std::size_t n_obs = 0;
  int iterations = 0;
  /// Block length (years) of the fitted extremes; return levels use p = b / r.
  int block_length = 1;
  std::vector<std::string> warnings;
};

/// Soft floor on sample size; smaller samples are fitted with a warning.
inline constexpr std::size_t kMinRecommendedObs = 10;

struct MlOptions {
  /// Starting point; the method-of-moments Gumbel start is used when empty.
  std::optional<GevParams> start;
  int max_iterations = 10000;
  double rel_tolerance = 1e-10;
};

/// Maximum likelihood over (mu, log sigma, xi) by Nelder-Mead. Minima are
/// fitted as maxima of the negated data and mapped back (mu -> -mu).
FitResult fit_ml(const BlockExtremes& extremes, const MlOptions& options = {});

/// First three probability weighted moments b0, b1, b2 of the sample.
struct PwmMoments {
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

/// b_r = n^-1 sum_j y_(j) prod_{l=1..r} (j - l) / (n - l) over the ascending
/// order statistics y_(1..n). Needs n >= 3.
PwmMoments pwm_moments(std::span<const double> values);
PwmMoments pwm_moments(const BlockExtremes& extremes);

/// Closed-form GEV parameters from the moments of maxima (rational
/// approximation for the shape).
FitResult fit_pwm_from_moments(const PwmMoments& moments);

/// Probability-weighted-moment estimator. Minima use the negation duality.
FitResult fit_pwm(const BlockExtremes& extremes);

FitResult fit(const BlockExtremes& extremes, FitMethod method, const MlOptions& options = {});

}  // namespace extremes
