#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "extremes/fit.hpp"
#include "extremes/gev.hpp"

namespace extremes {

enum class BootstrapScheme { Simple, CircularBlock };

struct BootstrapConfig {
  std::size_t n_replicates = 1000;
  /// Bootstrap block length in years (distinct from the GEV block length).
  std::size_t block_length = 1;
  std::uint64_t seed = 0;
  BootstrapScheme scheme = BootstrapScheme::CircularBlock;
  /// Central coverage of the reported envelopes.
  double envelope_level = 0.90;
  /// Worker threads (0 = hardware concurrency). Results do not depend on it.
  unsigned threads = 1;
};

/// Replicate year indices (0-based, length n) for replicate `replicate`.
///
/// CircularBlock forms the n wraparound blocks {i, ..., i+b-1 mod n}, draws
/// ceil(n/b) of them uniformly with replacement and truncates the
/// concatenation to n. Simple draws n indices with replacement; with b = 1
/// the circular scheme consumes the generator identically and gives the same
/// indices. Apply one index sequence to every cell to keep spatial
/// dependence.
std::vector<std::size_t> resample_indices(std::size_t n, const BootstrapConfig& config, std::size_t replicate);

/// Applies an index sequence to a series of extremes.
BlockExtremes take(const BlockExtremes& extremes, const std::vector<std::size_t>& indices);

/// Fraction of failed replicates above which a result is marked unreliable.
inline constexpr double kMaxFailureFraction = 0.05;

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct BootstrapResult {
  /// One slot per replicate; empty where the refit failed.
  std::vector<std::optional<GevParams>> replicates;
  std::vector<double> return_periods;
  /// replicate_return_levels[k][j]: level for return_periods[j] in replicate k
  /// (NaN where the replicate failed).
  std::vector<std::vector<double>> replicate_return_levels;

  double se_mu = 0.0;
  double se_log_sigma = 0.0;
  double se_sigma = 0.0;
  double se_xi = 0.0;
  std::vector<double> se_return_levels;

  double envelope_level = 0.90;
  Interval env_mu;
  Interval env_sigma;
  Interval env_xi;
  std::vector<Interval> env_return_levels;

  std::size_t n_failed = 0;
  bool unreliable = false;

  [[nodiscard]] std::size_t n_succeeded() const noexcept { return replicates.size() - n_failed; }
};

/// Refits `config.n_replicates` resampled copies of the extremes. ML refits
/// start from `point` when given. Failed refits are dropped and counted.
BootstrapResult bootstrap_fit(const BlockExtremes& extremes, const BootstrapConfig& config, FitMethod method,
                              const std::vector<double>& return_periods = {},
                              const std::optional<GevParams>& point = std::nullopt);

/// Scalar quantity compared between two states.
struct Quantity {
  enum class Kind { Mu, LogSigma, Sigma, Xi, ReturnLevel };
  Kind kind = Kind::Mu;
  /// Return period in years, for Kind::ReturnLevel.
  double return_period = 0.0;
  /// GEV block length in years used for return levels.
  double block_length = 1.0;

  static Quantity mu() { return {Kind::Mu}; }
  static Quantity log_sigma() { return {Kind::LogSigma}; }
  static Quantity sigma() { return {Kind::Sigma}; }
  static Quantity xi() { return {Kind::Xi}; }
  static Quantity return_level(double period, double block = 1.0) { return {Kind::ReturnLevel, period, block}; }

  [[nodiscard]] double of(const GevParams& params) const;
  [[nodiscard]] std::string name() const;
};

struct PValue {
  double p = 1.0;
  /// Valid replicate pairs used.
  std::size_t n_pairs = 0;
  /// Set when the replicates carry no information (all equal, or none).
  bool degenerate = false;
};

/// Two-sided p-value for "the statistic differs from zero" from bootstrap
/// replicates of the statistic: 2 min(#{d <= 0}, #{d >= 0}) / K, floored at
/// 2/K and capped at 1. If every replicate is identical the result is
/// degenerate: p = 1 when they are all zero, the floor otherwise.
PValue bootstrap_pvalue(std::span<const double> replicate_stats);

/// quantity(B*_k) - quantity(A*_k) for every replicate index k at which
/// both refits succeeded.
std::vector<double> paired_differences(const BootstrapResult& boot_a, const BootstrapResult& boot_b,
                                       const Quantity& quantity);

/// Two-sided bootstrap p-value for B - A:
/// p = 2 min(#{d* <= 0}, #{d* >= 0}) / K over paired replicate differences,
/// floored at 2/K and capped at 1. Replicates are paired by index.
PValue two_state_pvalue(const BootstrapResult& boot_a, const BootstrapResult& boot_b, const Quantity& quantity);

/// Seed for the bootstrap of state B given the run seed; state A uses the
/// run seed itself, so the two states are resampled independently.
std::uint64_t state_b_seed(std::uint64_t seed);

/// Bootstraps both states and evaluates the p-value for one quantity.
PValue two_state_pvalue(const BlockExtremes& state_a, const BlockExtremes& state_b, const Quantity& quantity,
                        const BootstrapConfig& config, FitMethod method = FitMethod::ML);

/// "++"/"--" for p < 0.02, "+"/"-" for p < 0.10, "" otherwise; the sign
/// follows the point estimate of the change.
std::string significance_mark(double p_value, double delta);

}  // namespace extremes
