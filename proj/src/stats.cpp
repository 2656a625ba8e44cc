#include "extremes/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace extremes::stats {

double mean(std::span<const double> x) {
  if (x.empty()) throw std::domain_error("mean of an empty sample");
  double sum = 0.0;
  for (const double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (const double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double quantile(std::span<const double> x, double prob) {
  if (x.empty()) throw std::domain_error("quantile of an empty sample");
  if (!(prob >= 0.0 && prob <= 1.0)) throw std::domain_error("quantile probability outside [0, 1]");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> x) { return quantile(x, 0.5); }

double lag1_autocorrelation(std::span<const double> x) {
  if (x.size() < 3) throw std::domain_error("autocorrelation needs at least three values");
  const double m = mean(x);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    den += (x[i] - m) * (x[i] - m);
    if (i + 1 < x.size()) num += (x[i] - m) * (x[i + 1] - m);
  }
  return num / den;
}

}  // namespace extremes::stats
