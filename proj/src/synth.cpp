#include "extremes/synth.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "extremes/rng.hpp"

namespace extremes {

void validate(const SyntheticSpec& spec) {
  if (spec.n_years == 0) throw std::invalid_argument("synthetic series needs at least one year");
  if (!(std::abs(spec.ar1_phi) < 1.0)) throw std::invalid_argument("AR(1) coefficient must satisfy |phi| < 1");
  if (!(spec.noise_sd > 0.0)) throw std::invalid_argument("noise_sd must be positive");
  if (!(spec.winter_sd_scale > 0.0)) throw std::invalid_argument("winter_sd_scale must be positive");
  if (!std::isfinite(spec.annual_cycle_mean) || !std::isfinite(spec.annual_cycle_amplitude)) {
    throw std::invalid_argument("seasonal cycle parameters must be finite");
  }
}

bool is_djf(int day_of_year) noexcept {
  return day_of_year >= calendar::kDecemberFirst || day_of_year <= calendar::kFebruaryLast;
}

DailySeries generate_daily(const SyntheticSpec& spec) {
  validate(spec);
  DailySeries series;
  series.cell_id = spec.cell_id;
  series.variable = spec.variable;
  series.values.resize(spec.n_years * kDaysPerYear);

  std::array<double, kDaysPerYear> cycle{};
  std::array<double, kDaysPerYear> innovation_sd{};
  for (std::size_t d = 0; d < kDaysPerYear; ++d) {
    const int day = static_cast<int>(d) + 1;
    cycle[d] = spec.annual_cycle_mean +
               spec.annual_cycle_amplitude * std::cos(2.0 * std::numbers::pi * (day - kWarmPeakDay) / 365.0);
    innovation_sd[d] = spec.noise_sd * (is_djf(day) ? spec.winter_sd_scale : 1.0);
  }

  Rng rng(spec.seed);
  const double phi = spec.ar1_phi;
  double e = innovation_sd[0] / std::sqrt(1.0 - phi * phi) * rng.normal();
  for (std::size_t t = 0; t < series.values.size(); ++t) {
    const std::size_t d = t % kDaysPerYear;
    if (t > 0) e = phi * e + innovation_sd[d] * rng.normal();
    series.values[t] = cycle[d] + e;
  }
  return series;
}

SyntheticSpec state_b_spec(const SyntheticSpec& base, double delta_mean, double winter_sd_ratio) {
  SyntheticSpec b = base;
  b.annual_cycle_mean += delta_mean;
  b.winter_sd_scale *= winter_sd_ratio;
  b.seed = derive_seed(base.seed, 1);
  return b;
}

std::pair<DailySeries, DailySeries> two_state_scenario(const SyntheticSpec& base, double delta_mean,
                                                       double winter_sd_ratio) {
  return {generate_daily(base), generate_daily(state_b_spec(base, delta_mean, winter_sd_ratio))};
}

}  // namespace extremes
