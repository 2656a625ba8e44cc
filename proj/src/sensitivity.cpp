#include "extremes/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "extremes/parallel.hpp"
#include "extremes/stats.hpp"

namespace extremes {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FitResult converged_fit(const BlockExtremes& extremes, FitMethod method, const MlOptions& options = {}) {
  FitResult f = fit(extremes, method, options);
  if (!f.converged) throw std::runtime_error("GEV fit did not converge");
  return f;
}

}  // namespace

BlockDiagnostic block_size_diagnostic(const BlockExtremes& annual, const BlockDiagnosticConfig& config) {
  if (annual.block_length != 1) throw std::invalid_argument("block-size diagnostic expects annual extremes");
  if (config.block_lengths.size() < 2) throw std::invalid_argument("diagnostic needs at least two block lengths");
  if (config.n_replicates == 0) throw std::invalid_argument("diagnostic needs bootstrap replicates");
  for (const int b : config.block_lengths) {
    if (b < 1) throw std::invalid_argument("block lengths must be positive");
  }
  const int longest = *std::max_element(config.block_lengths.begin(), config.block_lengths.end());
  if (annual.n_blocks() < 10 * static_cast<std::size_t>(longest)) {
    throw std::invalid_argument("diagnostic needs at least 10 blocks of the longest length (" +
                                std::to_string(10 * longest) + " years), got " + std::to_string(annual.n_blocks()));
  }

  BlockDiagnostic out;
  for (const int b : config.block_lengths) {
    out.xi_by_block.emplace_back(b, converged_fit(multi_year_extremes(annual, b), config.method).params.xi);
  }
  const int short_b = config.block_lengths.front();
  const int long_b = config.block_lengths.back();
  const FitResult short_fit = converged_fit(multi_year_extremes(annual, short_b), config.method);
  const FitResult long_fit = converged_fit(multi_year_extremes(annual, long_b), config.method);
  out.xi_diff = long_fit.params.xi - short_fit.params.xi;

  BootstrapConfig boot;
  boot.n_replicates = config.n_replicates;
  boot.block_length = static_cast<std::size_t>(longest);
  boot.seed = config.seed;
  boot.scheme = BootstrapScheme::CircularBlock;
  out.bootstrap_block_length = boot.block_length;
  out.n_replicates = config.n_replicates;

  MlOptions short_start;
  short_start.start = short_fit.params;
  MlOptions long_start;
  long_start.start = long_fit.params;
  std::vector<double> diffs(config.n_replicates, kNaN);
  parallel_for(config.n_replicates, config.threads, [&](std::size_t k) {
    const BlockExtremes data = take(annual, resample_indices(annual.n_blocks(), boot, k));
    try {
      const FitResult s = fit(multi_year_extremes(data, short_b), config.method, short_start);
      const FitResult l = fit(multi_year_extremes(data, long_b), config.method, long_start);
      if (s.converged && l.converged) diffs[k] = l.params.xi - s.params.xi;
    } catch (const std::exception&) {
      // Left as NaN and counted as failed.
    }
  });
  std::vector<double> valid;
  for (const double d : diffs) {
    if (std::isnan(d)) {
      ++out.n_failed;
    } else {
      valid.push_back(d);
    }
  }
  out.p_value = bootstrap_pvalue(valid).p;
  out.flagged = out.p_value < config.significance_level;
  return out;
}

double block_return_level(const FitResult& fit, double return_period) {
  const auto b = static_cast<double>(fit.block_length);
  if (!(return_period > b)) throw std::domain_error("return period must exceed the block length");
  return return_level(fit.params, return_period, b);
}

BlockRlComparison rl_change_by_block(const FitResult& annual_a, const FitResult& annual_b, const FitResult& block_a,
                                     const FitResult& block_b, const std::vector<double>& periods) {
  if (annual_a.block_length != annual_b.block_length || block_a.block_length != block_b.block_length) {
    throw std::invalid_argument("paired fits must share a block length");
  }
  BlockRlComparison out;
  out.periods = periods;
  for (const double r : periods) {
    out.delta_annual.push_back(block_return_level(annual_b, r) - block_return_level(annual_a, r));
    out.delta_long_block.push_back(block_return_level(block_b, r) - block_return_level(block_a, r));
  }
  return out;
}

ErrorSummary summarize(std::span<const double> values) {
  ErrorSummary s;
  s.n = values.size();
  if (values.empty()) {
    s.mean = s.sd = s.min = s.q25 = s.median = s.q75 = s.max = kNaN;
    return s;
  }
  s.mean = stats::mean(values);
  s.sd = stats::sample_sd(values);
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  s.q25 = stats::quantile(values, 0.25);
  s.median = stats::quantile(values, 0.5);
  s.q75 = stats::quantile(values, 0.75);
  return s;
}

SegmentExperiment segment_experiment(const DailySeries& series_a, const DailySeries& series_b,
                                     const SegmentOptions& options) {
  validate(series_a);
  validate(series_b);
  if (series_a.values.size() != series_b.values.size()) {
    throw std::invalid_argument("segment experiment needs series of equal length");
  }
  const std::size_t years = series_a.n_years();
  const std::size_t seg = options.segment_years;
  if (seg == 0 || seg > years) {
    throw std::invalid_argument("segment length " + std::to_string(seg) + " years exceeds the " +
                                std::to_string(years) + "-year series");
  }
  for (const double r : options.periods) {
    if (!(r > 1.0)) throw std::invalid_argument("return periods must exceed one year");
  }

  SegmentExperiment exp;
  exp.options = options;
  exp.n_years = years;
  const FitResult truth_a = converged_fit(annual_extremes(series_a, options.orientation), FitMethod::ML);
  const FitResult truth_b = converged_fit(annual_extremes(series_b, options.orientation), FitMethod::ML);
  exp.truth_a = truth_a.params;
  exp.truth_b = truth_b.params;
  for (const double r : options.periods) {
    exp.truth_delta_rl.push_back(return_level(truth_b.params, r) - return_level(truth_a.params, r));
  }

  const std::size_t n_pairs = years / seg;
  exp.pairs.resize(n_pairs);
  parallel_for(n_pairs, options.threads, [&](std::size_t i) {
    SegmentPair& pair = exp.pairs[i];
    pair.index = i;
    pair.delta_rl.assign(options.periods.size(), kNaN);
    try {
      const FitResult fa =
          converged_fit(annual_extremes(slice_years(series_a, i * seg, seg), options.orientation), options.method);
      const FitResult fb =
          converged_fit(annual_extremes(slice_years(series_b, i * seg, seg), options.orientation), options.method);
      pair.params_a = fa.params;
      pair.params_b = fb.params;
      for (std::size_t j = 0; j < options.periods.size(); ++j) {
        pair.delta_rl[j] = return_level(fb.params, options.periods[j]) - return_level(fa.params, options.periods[j]);
      }
      pair.ok = std::all_of(pair.delta_rl.begin(), pair.delta_rl.end(), [](double v) { return std::isfinite(v); });
      if (!pair.ok) pair.error = "non-finite return level";
    } catch (const std::exception& e) {
      pair.ok = false;
      pair.error = e.what();
    }
  });

  exp.errors.assign(options.periods.size(), {});
  for (const SegmentPair& pair : exp.pairs) {
    if (!pair.ok) {
      ++exp.n_failed;
      continue;
    }
    for (std::size_t j = 0; j < options.periods.size(); ++j) {
      exp.errors[j].push_back(pair.delta_rl[j] - exp.truth_delta_rl[j]);
    }
  }
  for (const auto& e : exp.errors) exp.summary.push_back(summarize(e));
  return exp;
}

}  // namespace extremes
