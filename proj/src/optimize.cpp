#include "extremes/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace extremes {
namespace {

using Point = std::array<double, 3>;
constexpr std::size_t kDim = 3;

Point affine(const Point& base, const Point& toward, double t) {
  Point out{};
  for (std::size_t i = 0; i < kDim; ++i) out[i] = base[i] + t * (toward[i] - base[i]);
  return out;
}

struct Simplex {
  std::array<Point, kDim + 1> vertices{};
  std::array<double, kDim + 1> values{};

  void order() {
    std::array<std::size_t, kDim + 1> idx{};
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    Simplex sorted;
    for (std::size_t i = 0; i <= kDim; ++i) {
      sorted.vertices[i] = vertices[idx[i]];
      sorted.values[i] = values[idx[i]];
    }
    *this = sorted;
  }
};

// One Nelder-Mead descent from `start`. Returns the number of iterations used.
int descend(const std::function<double(const Point&)>& f, const Point& start, const Point& step, double tol,
            int budget, NelderMeadResult& best) {
  Simplex s;
  s.vertices[0] = start;
  s.values[0] = f(start);
  for (std::size_t i = 0; i < kDim; ++i) {
    s.vertices[i + 1] = start;
    s.vertices[i + 1][i] += step[i];
    s.values[i + 1] = f(s.vertices[i + 1]);
  }
  int it = 0;
  bool converged = false;
  while (it < budget) {
    s.order();
    const double spread = s.values[kDim] - s.values[0];
    if (std::isfinite(s.values[kDim]) && spread <= tol * (std::abs(s.values[0]) + tol)) {
      converged = true;
      break;
    }
    ++it;
    Point centroid{};
    for (std::size_t v = 0; v < kDim; ++v) {
      for (std::size_t i = 0; i < kDim; ++i) centroid[i] += s.vertices[v][i] / kDim;
    }
    const Point& worst = s.vertices[kDim];
    const Point reflected = affine(centroid, worst, -1.0);
    const double f_reflected = f(reflected);
    if (f_reflected < s.values[0]) {
      const Point expanded = affine(centroid, worst, -2.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        s.vertices[kDim] = expanded;
        s.values[kDim] = f_expanded;
      } else {
        s.vertices[kDim] = reflected;
        s.values[kDim] = f_reflected;
      }
      continue;
    }
    if (f_reflected < s.values[kDim - 1]) {
      s.vertices[kDim] = reflected;
      s.values[kDim] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < s.values[kDim];
    const Point contracted = outside ? affine(centroid, worst, -0.5) : affine(centroid, worst, 0.5);
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : s.values[kDim])) {
      s.vertices[kDim] = contracted;
      s.values[kDim] = f_contracted;
      continue;
    }
    for (std::size_t v = 1; v <= kDim; ++v) {
      s.vertices[v] = affine(s.vertices[0], s.vertices[v], 0.5);
      s.values[v] = f(s.vertices[v]);
    }
  }
  s.order();
  best.x = s.vertices[0];
  best.value = s.values[0];
  best.converged = converged;
  return it;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Point&)>& objective, const Point& start,
                             const Point& step, const NelderMeadOptions& options) {
  NelderMeadResult best;
  int used = descend(objective, start, step, options.rel_tolerance, options.max_iterations, best);
  Point restart_step = step;
  for (int r = 0; r < options.max_restarts && best.converged && used < options.max_iterations; ++r) {
    for (double& h : restart_step) h *= 0.1;
    NelderMeadResult next;
    used += descend(objective, best.x, restart_step, options.rel_tolerance, options.max_iterations - used, next);
    const double gain = best.value - next.value;
    const bool improved = next.value < best.value;
    if (improved) best = next;
    if (!next.converged) break;
    if (!improved || gain <= options.rel_tolerance * (std::abs(best.value) + options.rel_tolerance)) break;
  }
  best.iterations = used;
  return best;
}

}  // namespace extremes
