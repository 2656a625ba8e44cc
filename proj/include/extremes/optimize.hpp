#pragma once

#include <array>
#include <functional>

namespace extremes {

struct NelderMeadOptions {
  int max_iterations = 10000;
  /// Converged when the spread of objective values across the simplex is
  /// below rel_tolerance * (|f_best| + rel_tolerance).
  double rel_tolerance = 1e-10;
  /// Restarts from the best vertex after convergence, until a restart no
  /// longer improves the objective.
  int max_restarts = 4;
};

struct NelderMeadResult {
  std::array<double, 3> x{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free minimization of a function of three variables with the
/// standard reflection/expansion/contraction/shrink coefficients
/// (1, 2, 1/2, 1/2). `step` sets the initial simplex edge per coordinate.
NelderMeadResult nelder_mead(const std::function<double(const std::array<double, 3>&)>& objective,
                             const std::array<double, 3>& start, const std::array<double, 3>& step,
                             const NelderMeadOptions& options = {});

}  // namespace extremes
