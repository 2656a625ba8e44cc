#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extremes/blocks.hpp"
#include "extremes/bootstrap.hpp"
#include "extremes/fit.hpp"

namespace extremes {

// ---------------------------------------------------------------------------
// Block-size diagnostic. Under max-stability the shape estimated from
// b-year blocks should not depend on b; a systematic difference between
// long- and short-block shapes says annual blocks are pre-asymptotic.
// ---------------------------------------------------------------------------

struct BlockDiagnosticConfig {
  /// Block lengths (years) to refit at; the test compares the last with the first.
  std::vector<int> block_lengths{1, 2, 5, 10};
  std::size_t n_replicates = 500;
  std::uint64_t seed = 0;
  FitMethod method = FitMethod::ML;
  double significance_level = 0.05;
  unsigned threads = 1;
};

struct BlockDiagnostic {
  std::string cell_id;
  std::vector<std::pair<int, double>> xi_by_block;
  /// xi(last block length) - xi(first block length).
  double xi_diff = 0.0;
  double p_value = 1.0;
  bool flagged = false;
  std::size_t n_replicates = 0;
  std::size_t n_failed = 0;
  /// Circular-bootstrap block length (years); equals the longest GEV block so
  /// every resampled long block is a run of consecutive years.
  std::size_t bootstrap_block_length = 0;
};

/// Refits annual extremes at every configured block length and tests
/// xi_long - xi_short = 0 with a paired circular block bootstrap: each
/// replicate resamples years once and refits both block lengths.
BlockDiagnostic block_size_diagnostic(const BlockExtremes& annual, const BlockDiagnosticConfig& config);

/// Return level of a fit at block length b, using p = b / r. Requires r > b.
double block_return_level(const FitResult& fit, double return_period);

struct BlockRlComparison {
  std::vector<double> periods;
  /// Return-level changes B - A from the annual fits.
  std::vector<double> delta_annual;
  /// The same changes from the long-block fits.
  std::vector<double> delta_long_block;
};

/// Annual-vs-long-block return-level change curves for two states.
BlockRlComparison rl_change_by_block(const FitResult& annual_a, const FitResult& annual_b, const FitResult& block_a,
                                     const FitResult& block_b, const std::vector<double>& periods);

// ---------------------------------------------------------------------------
// Segment-length experiment: how well do short runs estimate return-level
// changes that the full runs pin down?
// ---------------------------------------------------------------------------

struct SegmentOptions {
  std::size_t segment_years = 20;
  std::vector<double> periods{20.0, 50.0, 100.0};
  FitMethod method = FitMethod::ML;
  Orientation orientation = Orientation::Maxima;
  unsigned threads = 1;
};

struct SegmentPair {
  std::size_t index = 0;
  bool ok = false;
  std::string error;
  GevParams params_a;
  GevParams params_b;
  /// Estimated return-level change per period (NaN when !ok).
  std::vector<double> delta_rl;
};

struct ErrorSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

ErrorSummary summarize(std::span<const double> values);

struct SegmentExperiment {
  SegmentOptions options;
  std::size_t n_years = 0;
  /// Full-series ML fits used as ground truth.
  GevParams truth_a;
  GevParams truth_b;
  std::vector<double> truth_delta_rl;
  std::vector<SegmentPair> pairs;
  /// errors[j]: estimate - truth for period j over successful pairs.
  std::vector<std::vector<double>> errors;
  std::vector<ErrorSummary> summary;
  std::size_t n_failed = 0;
};

/// Pairs segment i of A with segment i of B (non-overlapping, consecutive
/// from the start, floor(n_years / L) pairs), fits each with the chosen
/// method and compares the return-level change with the full-run truth.
SegmentExperiment segment_experiment(const DailySeries& series_a, const DailySeries& series_b,
                                     const SegmentOptions& options);

}  // namespace extremes
