#include "extremes/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace extremes {

void validate(const DailySeries& series) {
  if (series.values.empty()) throw std::invalid_argument("daily series is empty");
  if (series.values.size() % kDaysPerYear != 0) {
    throw std::invalid_argument("daily series length " + std::to_string(series.values.size()) +
                                " is not a whole number of 365-day years");
  }
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (!std::isfinite(series.values[i])) {
      throw std::invalid_argument("non-finite daily value at index " + std::to_string(i));
    }
  }
}

DailySeries slice_years(const DailySeries& series, std::size_t first_year, std::size_t n_years) {
  if (first_year + n_years > series.n_years()) throw std::out_of_range("year slice beyond series end");
  DailySeries out = series;
  out.start_year = series.start_year + static_cast<int>(first_year);
  const auto begin = series.values.begin() + static_cast<std::ptrdiff_t>(first_year * kDaysPerYear);
  out.values.assign(begin, begin + static_cast<std::ptrdiff_t>(n_years * kDaysPerYear));
  return out;
}

BlockExtremes annual_maxima(const DailySeries& series) {
  validate(series);
  BlockExtremes out{Orientation::Maxima, 1, {}};
  out.values.reserve(series.n_years());
  for (auto it = series.values.begin(); it != series.values.end(); it += kDaysPerYear) {
    out.values.push_back(*std::max_element(it, it + kDaysPerYear));
  }
  return out;
}

BlockExtremes annual_minima(const DailySeries& series) {
  validate(series);
  if (series.n_years() < 2) {
    throw std::invalid_argument("annual minima need at least two years (one July-June block)");
  }
  constexpr std::size_t offset = calendar::kJuly1 - 1;
  BlockExtremes out{Orientation::Minima, 1, {}};
  out.values.reserve(series.n_years() - 1);
  for (std::size_t year = 0; year + 1 < series.n_years(); ++year) {
    const auto begin = series.values.begin() + static_cast<std::ptrdiff_t>(year * kDaysPerYear + offset);
    out.values.push_back(*std::min_element(begin, begin + kDaysPerYear));
  }
  return out;
}

BlockExtremes annual_extremes(const DailySeries& series, Orientation orientation) {
  return orientation == Orientation::Maxima ? annual_maxima(series) : annual_minima(series);
}

BlockExtremes multi_year_extremes(const BlockExtremes& extremes, int group_size) {
  if (group_size < 1) throw std::invalid_argument("block group size must be positive");
  const auto group = static_cast<std::size_t>(group_size);
  if (group > extremes.n_blocks()) {
    throw std::invalid_argument("block group size " + std::to_string(group_size) + " exceeds the " +
                                std::to_string(extremes.n_blocks()) + " available blocks");
  }
  BlockExtremes out{extremes.orientation, extremes.block_length * group_size, {}};
  const std::size_t n_out = extremes.n_blocks() / group;
  out.values.reserve(n_out);
  for (std::size_t k = 0; k < n_out; ++k) {
    const auto begin = extremes.values.begin() + static_cast<std::ptrdiff_t>(k * group);
    const auto end = begin + static_cast<std::ptrdiff_t>(group);
    out.values.push_back(extremes.orientation == Orientation::Maxima ? *std::max_element(begin, end)
                                                                     : *std::min_element(begin, end));
  }
  return out;
}

SeasonalStats seasonal_stats(const DailySeries& series, Season season) {
  validate(series);
  const std::size_t years = series.n_years();
  // Shifted accumulation keeps the variance accurate for large offsets.
  const double shift = series.values.front();
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;
  auto add_days = [&](std::size_t year, int first_day, int last_day) {
    for (int day = first_day; day <= last_day; ++day) {
      const double v = series.values[year * kDaysPerYear + static_cast<std::size_t>(day - 1)] - shift;
      sum += v;
      sum_sq += v * v;
      ++count;
    }
  };
  if (season == Season::JJA) {
    for (std::size_t y = 0; y < years; ++y) add_days(y, calendar::kJuneFirst, calendar::kAugustLast);
  } else {
    for (std::size_t y = 0; y + 1 < years; ++y) {
      add_days(y, calendar::kDecemberFirst, static_cast<int>(kDaysPerYear));
      add_days(y + 1, 1, calendar::kFebruaryLast);
    }
  }
  if (count < 2) throw std::invalid_argument("series holds no complete " + std::string(to_string(season)));
  const auto n = static_cast<double>(count);
  const double centered_mean = sum / n;
  const double variance = std::max(0.0, (sum_sq - n * centered_mean * centered_mean) / (n - 1.0));
  return SeasonalStats{season, shift + centered_mean, std::sqrt(variance), count};
}

}  // namespace extremes
