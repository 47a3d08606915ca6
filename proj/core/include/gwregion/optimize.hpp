#pragma once

#include <functional>
#include <span>
#include <vector>

// Small derivative-free numerical routines shared by the region modules and the oracles.
namespace gwregion::optimize {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a unimodal f on [lo, hi]. The endpoints are also
/// evaluated so that boundary minima are reported exactly.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      int iterations);

/// Bisection for an increasing f with f(lo) <= 0 <= f(hi). Stops at full double
/// resolution or after max_iterations halvings.
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         int max_iterations = 200);

/// Illinois false-position root finder. Throws NoRootError if f(lo), f(hi) do not
/// have opposite signs. Stops when |f(x)| <= residual_tol or the bracket collapses.
double false_position(const std::function<double(double)>& f, double lo, double hi,
                      double residual_tol, int max_iterations = 500);

struct SimplexOptions {
  int max_iterations = 2000;
  double initial_step = 0.3;
  /// Terminate when the spread of simplex values drops below this.
  double value_tolerance = 1e-15;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Nelder-Mead simplex descent with dimension-adaptive coefficients.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, const SimplexOptions& options);

}  // namespace gwregion::optimize
