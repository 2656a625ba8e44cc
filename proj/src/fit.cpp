#include "extremes/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "extremes/optimize.hpp"
#include "extremes/stats.hpp"

namespace extremes {
namespace {

constexpr double kEulerGamma = 0.57721566490153286;

std::vector<double> negated(std::span<const double> values) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](double v) { return -v; });
  return out;
}

void check_sample(std::span<const double> values, std::size_t min_obs) {
  if (values.size() < min_obs) {
    throw std::domain_error("GEV fit needs at least " + std::to_string(min_obs) + " observations");
  }
  for (const double v : values) {
    if (!std::isfinite(v)) throw std::domain_error("GEV fit input contains a non-finite value");
  }
}

void warn_small_sample(FitResult& result) {
  if (result.n_obs < kMinRecommendedObs) {
    result.warnings.push_back("only " + std::to_string(result.n_obs) + " observations; estimates are unreliable");
  }
}

// Maximum likelihood for the maxima kernel; `start` is in maxima convention.
FitResult fit_ml_maxima(std::span<const double> values, const MlOptions& options,
                        const std::optional<GevParams>& start) {
  const double sd = stats::sample_sd(values);
  if (!(sd > 0.0)) throw std::domain_error("GEV fit of a sample without spread");
  const double sigma0 = sd * std::sqrt(6.0) / std::numbers::pi;
  std::array<double, 3> x0{stats::mean(values) - kEulerGamma * sigma0, std::log(sigma0), 0.1};
  if (start) x0 = {start->mu, std::log(start->sigma), start->xi};
  const std::array<double, 3> step{0.2 * sigma0, 0.2, 0.1};

  auto objective = [values](const std::array<double, 3>& x) {
    return detail::maxima_nll(x[0], std::exp(x[1]), x[2], values, true);
  };
  const NelderMeadResult nm =
      nelder_mead(objective, x0, step, NelderMeadOptions{options.max_iterations, options.rel_tolerance});

  FitResult result;
  result.params = GevParams{nm.x[0], std::exp(nm.x[1]), nm.x[2], Orientation::Maxima};
  result.method = FitMethod::ML;
  result.nll = detail::maxima_nll(nm.x[0], result.params.sigma, nm.x[2], values, false);
  result.converged = nm.converged && std::isfinite(result.nll);
  result.iterations = nm.iterations;
  result.n_obs = values.size();
  if (!result.converged) result.warnings.emplace_back("likelihood optimization did not converge");
  return result;
}

}  // namespace

FitResult fit_ml(const BlockExtremes& extremes, const MlOptions& options) {
  check_sample(extremes.values, 3);
  FitResult result;
  if (extremes.orientation == Orientation::Maxima) {
    result = fit_ml_maxima(extremes.values, options, options.start);
  } else {
    std::optional<GevParams> start = options.start;
    if (start) start = GevParams{-start->mu, start->sigma, start->xi, Orientation::Maxima};
    result = fit_ml_maxima(negated(extremes.values), options, start);
    result.params.mu = -result.params.mu;
    result.params.orientation = Orientation::Minima;
  }
  result.block_length = extremes.block_length;
  warn_small_sample(result);
  return result;
}

PwmMoments pwm_moments(std::span<const double> values) {
  check_sample(values, 3);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t idx = 0; idx < sorted.size(); ++idx) {
    const auto j = static_cast<double>(idx + 1);
    const double y = sorted[idx];
    s0 += y;
    s1 += y * ((j - 1.0) / (n - 1.0));
    s2 += y * (((j - 1.0) * (j - 2.0)) / ((n - 1.0) * (n - 2.0)));
  }
  return PwmMoments{s0 / n, s1 / n, s2 / n};
}

PwmMoments pwm_moments(const BlockExtremes& extremes) { return pwm_moments(std::span<const double>(extremes.values)); }

FitResult fit_pwm_from_moments(const PwmMoments& m) {
  const double l2 = 2.0 * m.b1 - m.b0;
  const double denom = 3.0 * m.b2 - m.b0;
  if (denom == 0.0 || !std::isfinite(denom)) throw std::domain_error("degenerate moments: 3 b2 - b0 = 0");
  if (!(l2 > 0.0)) throw std::domain_error("degenerate moments: 2 b1 - b0 is not positive");
  const double c = l2 / denom - std::log(2.0) / std::log(3.0);
  const double k = 7.8590 * c + 2.9554 * c * c;

  FitResult result;
  result.method = FitMethod::PWM;
  result.converged = true;
  if (std::abs(k) < kGumbelThreshold) {
    const double sigma = l2 / std::log(2.0);
    result.params = GevParams{m.b0 - kEulerGamma * sigma, sigma, 0.0, Orientation::Maxima};
  } else {
    if (k <= -1.0) throw std::domain_error("PWM shape estimate implies an infinite mean");
    const double g = std::tgamma(1.0 + k);
    const double sigma = l2 * k / (g * -std::expm1(-k * std::log(2.0)));
    result.params = GevParams{m.b0 + sigma * (g - 1.0) / k, sigma, -k, Orientation::Maxima};
  }
  if (!(k > -0.5 && k < 0.5)) {
    result.warnings.push_back("PWM shape " + std::to_string(-k) + " outside the approximation range (-0.5, 0.5)");
  }
  return result;
}

FitResult fit_pwm(const BlockExtremes& extremes) {
  check_sample(extremes.values, 3);
  const bool minima = extremes.orientation == Orientation::Minima;
  const std::vector<double> data = minima ? negated(extremes.values) : extremes.values;
  FitResult result = fit_pwm_from_moments(pwm_moments(data));
  result.nll = detail::maxima_nll(result.params.mu, result.params.sigma, result.params.xi, data, false);
  if (minima) {
    result.params.mu = -result.params.mu;
    result.params.orientation = Orientation::Minima;
  }
  result.n_obs = extremes.values.size();
  result.block_length = extremes.block_length;
  warn_small_sample(result);
  return result;
}

FitResult fit(const BlockExtremes& extremes, FitMethod method, const MlOptions& options) {
  return method == FitMethod::ML ? fit_ml(extremes, options) : fit_pwm(extremes);
}

}  // namespace extremes
