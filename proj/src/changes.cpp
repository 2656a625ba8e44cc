#include "extremes/changes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "extremes/stats.hpp"

namespace extremes {
namespace {

ParameterChange parameter_change(double a, double b, const BootstrapResult& boot_a, const BootstrapResult& boot_b,
                                 const Quantity& quantity) {
  ParameterChange change;
  change.delta = b - a;
  const std::vector<double> diffs = paired_differences(boot_a, boot_b, quantity);
  change.se = stats::sample_sd(diffs);
  const PValue pv = bootstrap_pvalue(diffs);
  change.p_value = pv.p;
  change.degenerate = pv.degenerate;
  change.mark = significance_mark(pv.p, change.delta);
  return change;
}

void require_same_orientation(const FitResult& a, const FitResult& b) {
  if (a.params.orientation != b.params.orientation) {
    throw std::invalid_argument("cannot compare fits with different orientations");
  }
}

}  // namespace

std::vector<double> default_period_grid() {
  std::vector<double> grid;
  grid.reserve(21);
  for (int i = 0; i <= 20; ++i) grid.push_back(std::pow(10.0, 1.0 + 2.0 * i / 20.0));
  grid.front() = 10.0;
  grid.back() = 1000.0;
  return grid;
}

ChangeReport compare_states(const FitResult& fit_a, const FitResult& fit_b, const BootstrapResult& boot_a,
                            const BootstrapResult& boot_b) {
  require_same_orientation(fit_a, fit_b);
  ChangeReport report;
  report.orientation = fit_a.params.orientation;
  report.params_a = fit_a.params;
  report.params_b = fit_b.params;
  report.mu = parameter_change(fit_a.params.mu, fit_b.params.mu, boot_a, boot_b, Quantity::mu());
  report.log_sigma = parameter_change(std::log(fit_a.params.sigma), std::log(fit_b.params.sigma), boot_a, boot_b,
                                      Quantity::log_sigma());
  report.xi = parameter_change(fit_a.params.xi, fit_b.params.xi, boot_a, boot_b, Quantity::xi());
  report.n_replicate_pairs = paired_differences(boot_a, boot_b, Quantity::mu()).size();
  return report;
}

std::vector<RlChangePoint> rl_change_curve(const FitResult& fit_a, const FitResult& fit_b,
                                           const BootstrapResult& boot_a, const BootstrapResult& boot_b,
                                           const std::vector<double>& periods) {
  require_same_orientation(fit_a, fit_b);
  if (fit_a.block_length != fit_b.block_length) throw std::invalid_argument("fits use different block lengths");
  const auto block = static_cast<double>(fit_a.block_length);
  const double tail = (1.0 - boot_a.envelope_level) / 2.0;
  const std::size_t k_max = std::min(boot_a.replicates.size(), boot_b.replicates.size());

  std::vector<RlChangePoint> curve;
  curve.reserve(periods.size());
  double previous = -std::numeric_limits<double>::infinity();
  for (const double r : periods) {
    if (!(r > previous)) throw std::invalid_argument("return periods must be strictly increasing");
    previous = r;
    RlChangePoint point;
    point.return_period = r;
    point.delta = return_level(fit_b.params, r, block) - return_level(fit_a.params, r, block);
    std::vector<double> deltas;
    for (std::size_t k = 0; k < k_max; ++k) {
      if (boot_a.replicates[k] && boot_b.replicates[k]) {
        deltas.push_back(return_level(*boot_b.replicates[k], r, block) - return_level(*boot_a.replicates[k], r, block));
      }
    }
    if (deltas.empty()) {
      point.envelope = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    } else {
      point.envelope = {stats::quantile(deltas, tail), stats::quantile(deltas, 1.0 - tail)};
    }
    curve.push_back(point);
  }
  return curve;
}

LocationShiftDecomposition decompose_location_shift(const SeasonalStats& season_a, const SeasonalStats& season_b,
                                                    const GevParams& params_a, const GevParams& params_b) {
  if (!(season_a.sd > 0.0)) throw std::domain_error("state A seasonal standard deviation must be positive");
  LocationShiftDecomposition d;
  d.m1 = season_a.mean;
  d.s1 = season_a.sd;
  d.m2 = season_b.mean;
  d.s2 = season_b.sd;
  d.predicted_mu2 = d.m2 + (params_a.mu - d.m1) * d.s2 / d.s1;
  d.observed_mu2 = params_b.mu;
  d.predicted_delta_mu = d.predicted_mu2 - params_a.mu;
  d.observed_delta_mu = params_b.mu - params_a.mu;
  d.delta_m = d.m2 - d.m1;
  if (std::abs(d.delta_m) >= kMinMeanShift) d.ratio_mu_over_mean = d.observed_delta_mu / d.delta_m;
  return d;
}

ChangeReport analyze_change(const StateComparisonInput& input, const ChangeOptions& options) {
  const BlockExtremes extremes_a = annual_extremes(input.series_a, options.orientation);
  const BlockExtremes extremes_b = annual_extremes(input.series_b, options.orientation);
  const FitResult fit_a = fit(extremes_a, options.method);
  const FitResult fit_b = fit(extremes_b, options.method);
  if (!fit_a.converged || !fit_b.converged) {
    throw std::runtime_error("GEV fit did not converge for cell " + input.cell_id);
  }
  BootstrapConfig config_b = options.bootstrap;
  config_b.seed = state_b_seed(options.bootstrap.seed);
  const BootstrapResult boot_a = bootstrap_fit(extremes_a, options.bootstrap, options.method, {}, fit_a.params);
  const BootstrapResult boot_b = bootstrap_fit(extremes_b, config_b, options.method, {}, fit_b.params);

  ChangeReport report = compare_states(fit_a, fit_b, boot_a, boot_b);
  report.cell_id = input.cell_id;
  report.rl_change_curve = rl_change_curve(fit_a, fit_b, boot_a, boot_b, options.periods);
  const Season season = options.orientation == Orientation::Maxima ? Season::JJA : Season::DJF;
  report.seasonal = decompose_location_shift(seasonal_stats(input.series_a, season),
                                             seasonal_stats(input.series_b, season), fit_a.params, fit_b.params);
  return report;
}

}  // namespace extremes
