#include "extremes/gev.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "extremes/rng.hpp"

namespace extremes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_gumbel(double xi) { return std::abs(xi) < kGumbelThreshold; }

void require_finite(double y) {
  if (!std::isfinite(y)) throw std::domain_error("GEV evaluated at a non-finite argument");
}

void require_orientation(const GevParams& params, Orientation expected, const char* what) {
  if (params.orientation != expected) {
    throw std::invalid_argument(std::string(what) + " requires " + std::string(to_string(expected)) +
                                " parameters");
  }
}

// exp(-{1 + xi (y - mu) / sigma}_+^(-1/xi)), the maxima distribution function.
double maxima_kernel(double mu, double sigma, double xi, double y) {
  const double z = (y - mu) / sigma;
  if (is_gumbel(xi)) return std::exp(-std::exp(-z));
  const double t = 1.0 + xi * z;
  if (t <= 0.0) return xi > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::exp(-std::log1p(xi * z) / xi));
}

double maxima_log_density(double mu, double sigma, double xi, double y) {
  const double z = (y - mu) / sigma;
  if (is_gumbel(xi)) return -std::log(sigma) - z - std::exp(-z);
  if (1.0 + xi * z <= 0.0) return -kInf;
  const double lt = std::log1p(xi * z);
  return -std::log(sigma) - (1.0 + 1.0 / xi) * lt - std::exp(-lt / xi);
}

// Level y with -log(-log G) = gumbel_variate under the maxima kernel, i.e.
// mu + sigma * ((-log G)^(-xi) - 1) / xi written through expm1.
double maxima_level(double mu, double sigma, double xi, double log_neg_log_prob) {
  if (is_gumbel(xi)) return mu - sigma * log_neg_log_prob;
  return mu + sigma * std::expm1(-xi * log_neg_log_prob) / xi;
}

void require_probability(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) throw std::domain_error("probability must lie in (0, 1)");
}

}  // namespace

void validate(const GevParams& params) {
  if (!std::isfinite(params.mu) || !std::isfinite(params.sigma) || !std::isfinite(params.xi)) {
    throw std::domain_error("GEV parameters must be finite");
  }
  if (!(params.sigma > 0.0)) throw std::domain_error("GEV scale must be positive");
}

std::pair<double, double> support(const GevParams& params) {
  validate(params);
  if (is_gumbel(params.xi)) return {-kInf, kInf};
  const double endpoint_offset = params.sigma / params.xi;
  if (params.orientation == Orientation::Maxima) {
    const double endpoint = params.mu - endpoint_offset;
    return params.xi > 0.0 ? std::pair{endpoint, kInf} : std::pair{-kInf, endpoint};
  }
  const double endpoint = params.mu + endpoint_offset;
  return params.xi < 0.0 ? std::pair{endpoint, kInf} : std::pair{-kInf, endpoint};
}

double cdf_maxima(const GevParams& params, double y) {
  validate(params);
  require_orientation(params, Orientation::Maxima, "cdf_maxima");
  require_finite(y);
  return maxima_kernel(params.mu, params.sigma, params.xi, y);
}

double survival_minima(const GevParams& params, double y) {
  validate(params);
  require_orientation(params, Orientation::Minima, "survival_minima");
  require_finite(y);
  // Reflection: the minima expression at (mu, y) is the maxima kernel at (-mu, -y).
  return maxima_kernel(-params.mu, params.sigma, params.xi, -y);
}

double cdf(const GevParams& params, double y) {
  if (params.orientation == Orientation::Maxima) return cdf_maxima(params, y);
  return 1.0 - survival_minima(params, y);
}

double survival(const GevParams& params, double y) {
  if (params.orientation == Orientation::Minima) return survival_minima(params, y);
  return 1.0 - cdf_maxima(params, y);
}

double log_density(const GevParams& params, double y) {
  validate(params);
  require_finite(y);
  if (params.orientation == Orientation::Maxima) {
    return maxima_log_density(params.mu, params.sigma, params.xi, y);
  }
  return maxima_log_density(-params.mu, params.sigma, params.xi, -y);
}

double density(const GevParams& params, double y) { return std::exp(log_density(params, y)); }

double quantile(const GevParams& params, double prob) {
  validate(params);
  require_probability(prob);
  if (params.orientation == Orientation::Maxima) {
    return maxima_level(params.mu, params.sigma, params.xi, std::log(-std::log(prob)));
  }
  // P(min <= y) = prob  <=>  maxima kernel at (-mu, -y) equals 1 - prob.
  return -maxima_level(-params.mu, params.sigma, params.xi, std::log(-std::log1p(-prob)));
}

double return_level(const GevParams& params, const ReturnLevelQuery& query) {
  validate(params);
  if (!(query.block_length > 0.0) || !std::isfinite(query.return_period)) {
    throw std::domain_error("return level query needs a positive block length and finite period");
  }
  const double p = query.p();
  require_probability(p);
  const double gumbel_variate = std::log(-std::log1p(-p));
  if (params.orientation == Orientation::Maxima) {
    return maxima_level(params.mu, params.sigma, params.xi, gumbel_variate);
  }
  return -maxima_level(-params.mu, params.sigma, params.xi, gumbel_variate);
}

double return_level(const GevParams& params, double return_period, double block_length) {
  return return_level(params, ReturnLevelQuery{return_period, block_length});
}

double neg_log_likelihood(const GevParams& params, const BlockExtremes& extremes) {
  validate(params);
  if (extremes.values.empty()) throw std::domain_error("likelihood of an empty sample");
  if (extremes.orientation != params.orientation) {
    throw std::invalid_argument("orientation of parameters and extremes differ");
  }
  if (params.orientation == Orientation::Maxima) {
    return detail::maxima_nll(params.mu, params.sigma, params.xi, extremes.values, false);
  }
  std::vector<double> negated(extremes.values.size());
  for (std::size_t i = 0; i < negated.size(); ++i) negated[i] = -extremes.values[i];
  return detail::maxima_nll(-params.mu, params.sigma, params.xi, negated, false);
}

BlockExtremes sample(const GevParams& params, std::size_t n, std::uint64_t seed) {
  validate(params);
  if (n == 0) throw std::domain_error("sample size must be positive");
  Rng rng(seed);
  BlockExtremes out{params.orientation, 1, {}};
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.values.push_back(quantile(params, rng.uniform()));
  return out;
}

namespace detail {

double maxima_nll(double mu, double sigma, double xi, std::span<const double> values, bool penalize) {
  const double log_sigma = std::log(sigma);
  const double inv_sigma = 1.0 / sigma;
  const auto n = static_cast<double>(values.size());
  if (is_gumbel(xi)) {
    double sum = 0.0;
    for (const double y : values) {
      const double z = (y - mu) * inv_sigma;
      sum += z + std::exp(-z);
    }
    return n * log_sigma + sum;
  }
  // log(t) rather than log1p: the likelihood is a sum of O(1) terms, so the
  // absolute error is what matters, and log is markedly cheaper.
  double sum_log = 0.0;
  double sum_pow = 0.0;
  double violation = 0.0;
  bool outside = false;
  const double inv_xi = 1.0 / xi;
  const double slope = xi * inv_sigma;
  for (const double y : values) {
    const double t = 1.0 + slope * (y - mu);
    if (t <= 0.0) {
      outside = true;
      violation += t * t;
      continue;
    }
    const double lt = std::log(t);
    sum_log += lt;
    sum_pow += std::exp(-lt * inv_xi);
  }
  if (outside) return penalize ? 1e10 + violation : kInf;
  return n * log_sigma + (1.0 + inv_xi) * sum_log + sum_pow;
}

}  // namespace detail

}  // namespace extremes
