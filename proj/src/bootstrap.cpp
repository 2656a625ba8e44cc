#include "extremes/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "extremes/parallel.hpp"
#include "extremes/rng.hpp"
#include "extremes/stats.hpp"

namespace extremes {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Interval envelope(std::span<const double> values, double level) {
  if (values.empty()) return {kNaN, kNaN};
  const double tail = (1.0 - level) / 2.0;
  return {stats::quantile(values, tail), stats::quantile(values, 1.0 - tail)};
}

}  // namespace

std::vector<std::size_t> resample_indices(std::size_t n, const BootstrapConfig& config, std::size_t replicate) {
  const std::size_t b = config.block_length;
  if (n == 0) throw std::invalid_argument("cannot resample an empty series");
  if (b == 0 || b > n) {
    throw std::invalid_argument("bootstrap block length " + std::to_string(b) + " must lie in [1, " +
                                std::to_string(n) + "]");
  }
  Rng rng(derive_seed(config.seed, replicate));
  std::vector<std::size_t> out;
  out.reserve(n);
  if (config.scheme == BootstrapScheme::Simple) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(rng.index(n));
    return out;
  }
  const std::size_t n_draws = (n + b - 1) / b;
  for (std::size_t d = 0; d < n_draws; ++d) {
    const std::size_t start = rng.index(n);
    for (std::size_t j = 0; j < b && out.size() < n; ++j) out.push_back((start + j) % n);
  }
  return out;
}

BlockExtremes take(const BlockExtremes& extremes, const std::vector<std::size_t>& indices) {
  BlockExtremes out{extremes.orientation, extremes.block_length, {}};
  out.values.reserve(indices.size());
  for (const std::size_t i : indices) out.values.push_back(extremes.values.at(i));
  return out;
}

BootstrapResult bootstrap_fit(const BlockExtremes& extremes, const BootstrapConfig& config, FitMethod method,
                              const std::vector<double>& return_periods, const std::optional<GevParams>& point) {
  if (config.n_replicates == 0) throw std::invalid_argument("bootstrap needs at least one replicate");
  if (!(config.envelope_level > 0.0 && config.envelope_level < 1.0)) {
    throw std::invalid_argument("envelope level must lie in (0, 1)");
  }
  const std::size_t n = extremes.n_blocks();
  BootstrapResult result;
  result.return_periods = return_periods;
  result.envelope_level = config.envelope_level;
  result.replicates.resize(config.n_replicates);
  result.replicate_return_levels.assign(config.n_replicates, std::vector<double>(return_periods.size(), kNaN));

  MlOptions options;
  options.start = point;
  const auto block = static_cast<double>(extremes.block_length);
  parallel_for(config.n_replicates, config.threads, [&](std::size_t k) {
    const BlockExtremes replicate = take(extremes, resample_indices(n, config, k));
    try {
      const FitResult f = fit(replicate, method, options);
      if (!f.converged) return;
      for (std::size_t j = 0; j < return_periods.size(); ++j) {
        result.replicate_return_levels[k][j] = return_level(f.params, return_periods[j], block);
      }
      result.replicates[k] = f.params;
    } catch (const std::exception&) {
      // Counted as a failed replicate below.
      std::fill(result.replicate_return_levels[k].begin(), result.replicate_return_levels[k].end(), kNaN);
    }
  });

  std::vector<double> mu;
  std::vector<double> log_sigma;
  std::vector<double> sigma;
  std::vector<double> xi;
  std::vector<std::vector<double>> levels(return_periods.size());
  for (std::size_t k = 0; k < config.n_replicates; ++k) {
    const auto& p = result.replicates[k];
    if (!p) {
      ++result.n_failed;
      continue;
    }
    mu.push_back(p->mu);
    sigma.push_back(p->sigma);
    log_sigma.push_back(std::log(p->sigma));
    xi.push_back(p->xi);
    for (std::size_t j = 0; j < return_periods.size(); ++j) levels[j].push_back(result.replicate_return_levels[k][j]);
  }
  result.unreliable =
      static_cast<double>(result.n_failed) > kMaxFailureFraction * static_cast<double>(config.n_replicates);

  result.se_mu = stats::sample_sd(mu);
  result.se_sigma = stats::sample_sd(sigma);
  result.se_log_sigma = stats::sample_sd(log_sigma);
  result.se_xi = stats::sample_sd(xi);
  result.env_mu = envelope(mu, config.envelope_level);
  result.env_sigma = envelope(sigma, config.envelope_level);
  result.env_xi = envelope(xi, config.envelope_level);
  for (const auto& lv : levels) {
    result.se_return_levels.push_back(stats::sample_sd(lv));
    result.env_return_levels.push_back(envelope(lv, config.envelope_level));
  }
  return result;
}

double Quantity::of(const GevParams& params) const {
  switch (kind) {
    case Kind::Mu:
      return params.mu;
    case Kind::LogSigma:
      return std::log(params.sigma);
    case Kind::Sigma:
      return params.sigma;
    case Kind::Xi:
      return params.xi;
    case Kind::ReturnLevel:
      return extremes::return_level(params, return_period, block_length);
  }
  return kNaN;
}

std::string Quantity::name() const {
  switch (kind) {
    case Kind::Mu:
      return "mu";
    case Kind::LogSigma:
      return "log_sigma";
    case Kind::Sigma:
      return "sigma";
    case Kind::Xi:
      return "xi";
    case Kind::ReturnLevel:
      return "return_level";
  }
  return "unknown";
}

std::vector<double> paired_differences(const BootstrapResult& boot_a, const BootstrapResult& boot_b,
                                       const Quantity& quantity) {
  const std::size_t k_max = std::min(boot_a.replicates.size(), boot_b.replicates.size());
  std::vector<double> diffs;
  diffs.reserve(k_max);
  for (std::size_t k = 0; k < k_max; ++k) {
    if (boot_a.replicates[k] && boot_b.replicates[k]) {
      diffs.push_back(quantity.of(*boot_b.replicates[k]) - quantity.of(*boot_a.replicates[k]));
    }
  }
  return diffs;
}

PValue two_state_pvalue(const BootstrapResult& boot_a, const BootstrapResult& boot_b, const Quantity& quantity) {
  return bootstrap_pvalue(paired_differences(boot_a, boot_b, quantity));
}

PValue bootstrap_pvalue(std::span<const double> diffs) {
  PValue out;
  out.n_pairs = diffs.size();
  if (diffs.empty()) {
    out.degenerate = true;
    out.p = 1.0;
    return out;
  }
  const auto k = static_cast<double>(diffs.size());
  const double floor = std::min(1.0, 2.0 / k);
  const auto [lo, hi] = std::minmax_element(diffs.begin(), diffs.end());
  if (*lo == *hi) {
    out.degenerate = true;
    out.p = *lo == 0.0 ? 1.0 : floor;
    return out;
  }
  const auto at_most_zero = static_cast<double>(std::count_if(diffs.begin(), diffs.end(), [](double d) { return d <= 0.0; }));
  const auto at_least_zero = static_cast<double>(std::count_if(diffs.begin(), diffs.end(), [](double d) { return d >= 0.0; }));
  out.p = std::clamp(2.0 * std::min(at_most_zero, at_least_zero) / k, floor, 1.0);
  return out;
}

std::uint64_t state_b_seed(std::uint64_t seed) { return derive_seed(seed, 0xB0B0B0B0ULL); }

PValue two_state_pvalue(const BlockExtremes& state_a, const BlockExtremes& state_b, const Quantity& quantity,
                        const BootstrapConfig& config, FitMethod method) {
  if (state_a.orientation != state_b.orientation) throw std::invalid_argument("states differ in orientation");
  const FitResult fit_a = fit(state_a, method);
  const FitResult fit_b = fit(state_b, method);
  if (!fit_a.converged || !fit_b.converged) throw std::runtime_error("point fit of a state did not converge");
  BootstrapConfig config_b = config;
  config_b.seed = state_b_seed(config.seed);
  const BootstrapResult boot_a = bootstrap_fit(state_a, config, method, {}, fit_a.params);
  const BootstrapResult boot_b = bootstrap_fit(state_b, config_b, method, {}, fit_b.params);
  return two_state_pvalue(boot_a, boot_b, quantity);
}

std::string significance_mark(double p_value, double delta) {
  if (delta == 0.0 || !(p_value < 0.10)) return "";
  const bool strong = p_value < 0.02;
  if (delta > 0.0) return strong ? "++" : "+";
  return strong ? "--" : "-";
}

}  // namespace extremes
