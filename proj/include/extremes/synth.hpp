#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "extremes/blocks.hpp"

namespace extremes {

/// Seasonal-cycle plus AR(1) daily temperature model:
///   value(day) = mean + amplitude cos(2 pi (day - 196) / 365) + e(day),
///   e(t) = phi e(t-1) + sd(t) eps(t),  eps ~ N(0, 1),
/// where sd(t) = noise_sd, multiplied by winter_sd_scale on DJF days.
struct SyntheticSpec {
  std::size_t n_years = 1000;
  double annual_cycle_mean = 0.0;
  double annual_cycle_amplitude = 0.0;
  double ar1_phi = 0.0;
  double noise_sd = 1.0;
  double winter_sd_scale = 1.0;
  std::uint64_t seed = 0;
  Variable variable = Variable::Tmax;
  std::string cell_id = "synthetic";
};

/// Day of year (1-based) at which the seasonal cycle peaks.
inline constexpr int kWarmPeakDay = 196;

/// Throws std::invalid_argument for |phi| >= 1, non-positive noise or
/// winter scale, or zero years.
void validate(const SyntheticSpec& spec);

bool is_djf(int day_of_year) noexcept;

DailySeries generate_daily(const SyntheticSpec& spec);

/// State A is `base`; state B shifts the mean by `delta_mean`, multiplies
/// the DJF innovation scale by `winter_sd_ratio` and draws from an
/// independent stream derived from the base seed.
std::pair<DailySeries, DailySeries> two_state_scenario(const SyntheticSpec& base, double delta_mean,
                                                       double winter_sd_ratio);

/// The state-B spec used by two_state_scenario.
SyntheticSpec state_b_spec(const SyntheticSpec& base, double delta_mean, double winter_sd_ratio);

}  // namespace extremes
