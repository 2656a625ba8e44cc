#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "extremes/types.hpp"

namespace extremes {

/// Days per model year. The no-leap calendar is used throughout.
inline constexpr std::size_t kDaysPerYear = 365;

/// 1-based day-of-year boundaries on the 365-day calendar.
namespace calendar {
inline constexpr int kJuly1 = 182;
inline constexpr int kJuneFirst = 152;
inline constexpr int kAugustLast = 243;
inline constexpr int kDecemberFirst = 335;
inline constexpr int kFebruaryLast = 59;
}  // namespace calendar

enum class Variable { Tmax, Tmin };

constexpr std::string_view to_string(Variable v) noexcept { return v == Variable::Tmax ? "Tmax" : "Tmin"; }

/// Daily values for one grid cell, 365 values per year starting on
/// January 1 of `start_year`.
struct DailySeries {
  std::string cell_id;
  double latitude = 0.0;
  double longitude = 0.0;
  int start_year = 1;
  Variable variable = Variable::Tmax;
  std::vector<double> values;

  [[nodiscard]] std::size_t n_years() const noexcept { return values.size() / kDaysPerYear; }
};

/// Throws std::invalid_argument when the length is not a whole number of
/// years or a value is not finite.
void validate(const DailySeries& series);

/// Years [first_year, first_year + n_years) of `series` (0-based offsets).
DailySeries slice_years(const DailySeries& series, std::size_t first_year, std::size_t n_years);

/// January-December maxima, one per year.
BlockExtremes annual_maxima(const DailySeries& series);

/// July-June minima. Block k spans July 1 of year k through June 30 of year
/// k+1, so the leading and trailing half-years are discarded.
BlockExtremes annual_minima(const DailySeries& series);

/// annual_maxima for Maxima, annual_minima for Minima.
BlockExtremes annual_extremes(const DailySeries& series, Orientation orientation);

/// Reduces consecutive groups of `group_size` blocks to one block by max
/// (Maxima) or min (Minima); a trailing partial group is dropped. Applied to
/// annual extremes, `group_size` is the new block length in years.
BlockExtremes multi_year_extremes(const BlockExtremes& extremes, int group_size);

enum class Season { JJA, DJF };

constexpr std::string_view to_string(Season s) noexcept { return s == Season::JJA ? "JJA" : "DJF"; }

/// Pooled mean and standard deviation (N-1) of all daily values in a season.
struct SeasonalStats {
  Season season = Season::JJA;
  double mean = 0.0;
  double sd = 0.0;
  std::size_t n_days = 0;

  /// True when the pooled values have no spread.
  [[nodiscard]] bool degenerate() const noexcept { return !(sd > 0.0); }
};

/// Pools every complete season in the series. DJF pairs December of year y
/// with January-February of year y+1.
SeasonalStats seasonal_stats(const DailySeries& series, Season season);

}  // namespace extremes
