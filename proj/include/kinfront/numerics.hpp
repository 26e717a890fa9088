#pragma once

#include <functional>

namespace kinfront::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a finite
/// interval. The interval with the largest error estimate is bisected until
/// the summed estimate is below max(abs_tol, rel_tol * |I|).
///
/// Throws ConvergenceError when max_intervals is exhausted.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals = 4000);

struct MinimizeResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
/// Stops once the bracket is narrower than x_tol * (1 + |x|).
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double x_tol, int max_iterations = 400);

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  // |f(x)|
  int iterations = 0;
};

/// Bisection for an increasing f with f(lo) < 0 < f(hi). f may return +inf
/// at the upper end. Stops once |f| <= f_tol or the bracket cannot be split
/// further in double precision.
///
/// Throws ConvergenceError after max_iterations.
RootResult bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                             double f_tol, int max_iterations = 200);

/// Ordinary least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

LineFit fit_line(const double* x, const double* y, std::size_t count);

}  // namespace kinfront::numerics
