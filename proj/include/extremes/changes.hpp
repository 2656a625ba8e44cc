#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extremes/blocks.hpp"
#include "extremes/bootstrap.hpp"
#include "extremes/fit.hpp"

namespace extremes {

/// 21 log-spaced return periods from 10 to 1000 years.
std::vector<double> default_period_grid();

struct ParameterChange {
  double delta = 0.0;
  /// Standard deviation of the paired replicate differences.
  double se = 0.0;
  double p_value = 1.0;
  bool degenerate = false;
  std::string mark;
};

struct RlChangePoint {
  double return_period = 0.0;
  double delta = 0.0;
  Interval envelope;
};

/// Predicted vs observed location shift from the seasonal mean/SD relation
/// mu2 - m2 = (mu1 - m1) s2 / s1.
struct LocationShiftDecomposition {
  double m1 = 0.0;
  double s1 = 0.0;
  double m2 = 0.0;
  double s2 = 0.0;
  double predicted_mu2 = 0.0;
  double observed_mu2 = 0.0;
  double predicted_delta_mu = 0.0;
  double observed_delta_mu = 0.0;
  double delta_m = 0.0;
  /// observed_delta_mu / delta_m; empty when delta_m is numerically zero.
  std::optional<double> ratio_mu_over_mean;
};

struct ChangeReport {
  std::string cell_id;
  Orientation orientation = Orientation::Maxima;
  GevParams params_a;
  GevParams params_b;
  ParameterChange mu;
  ParameterChange log_sigma;
  ParameterChange xi;
  std::vector<RlChangePoint> rl_change_curve;
  std::optional<LocationShiftDecomposition> seasonal;
  std::size_t n_replicate_pairs = 0;
};

/// Parameter deltas (B - A) with bootstrap p-values and marks. The
/// bootstraps must come from independent resampling of each state with the
/// same replicate count.
ChangeReport compare_states(const FitResult& fit_a, const FitResult& fit_b, const BootstrapResult& boot_a,
                            const BootstrapResult& boot_b);

/// Return-level change B - A at each period with a paired-replicate
/// envelope at the bootstraps' envelope level.
std::vector<RlChangePoint> rl_change_curve(const FitResult& fit_a, const FitResult& fit_b,
                                           const BootstrapResult& boot_a, const BootstrapResult& boot_b,
                                           const std::vector<double>& periods = default_period_grid());

/// |delta m| below this (degrees C) leaves the mean-shift ratio undefined.
inline constexpr double kMinMeanShift = 1e-9;

LocationShiftDecomposition decompose_location_shift(const SeasonalStats& season_a, const SeasonalStats& season_b,
                                                    const GevParams& params_a, const GevParams& params_b);

/// Everything needed to compare one cell across two climate states.
struct StateComparisonInput {
  std::string cell_id;
  DailySeries series_a;
  DailySeries series_b;
};

struct ChangeOptions {
  Orientation orientation = Orientation::Maxima;
  FitMethod method = FitMethod::ML;
  BootstrapConfig bootstrap;
  std::vector<double> periods = default_period_grid();
};

/// Extracts annual extremes, fits, bootstraps both states and assembles
/// the full report including the seasonal decomposition (JJA for maxima,
/// DJF for minima).
ChangeReport analyze_change(const StateComparisonInput& input, const ChangeOptions& options);

}  // namespace extremes
