#include "kinfront/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "kinfront/errors.hpp"

namespace kinfront::numerics {

namespace {

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  double err = std::abs(kronrod - gauss);
  // QUADPACK-style rescaling of the raw difference.
  err = std::min(err, 200.0 * err * std::sqrt(200.0 * err / std::max(std::abs(kronrod), 1e-300)));
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
  if (!std::isfinite(kronrod)) err = std::numeric_limits<double>::infinity();
  return {a, b, kronrod, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals) {
  std::priority_queue<Panel> panels;
  panels.push(gauss_kronrod_15(f, a, b));
  double total = panels.top().value;
  double total_err = panels.top().error;
  int evaluations = 15;

  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (static_cast<int>(panels.size()) >= max_intervals) {
      throw ConvergenceError("adaptive quadrature: interval budget exhausted (error estimate " +
                             std::to_string(total_err) + ")");
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval can no longer be split; accept what we have.
      panels.push(worst);
      break;
    }
    const Panel left = gauss_kronrod_15(f, worst.a, mid);
    const Panel right = gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    panels.push(left);
    panels.push(right);

    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
  }
  // Final re-sum removes drift from the incremental updates.
  int count = static_cast<int>(panels.size());
  total = 0.0;
  total_err = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    total_err += panels.top().error;
    panels.pop();
  }
  return {total, total_err, evaluations, count};
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double x_tol, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  for (; it < max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= x_tol * (1.0 + std::abs(mid))) break;
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  if (f1 <= f2) return {x1, f1, it};
  return {x2, f2, it};
}

RootResult bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                             double f_tol, int max_iterations) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (!(f_lo <= 0.0) || !(f_hi >= 0.0)) {
    throw ConvergenceError("bisection: root is not bracketed");
  }
  RootResult best = std::abs(f_lo) <= std::abs(f_hi) ? RootResult{lo, std::abs(f_lo), 0}
                                                       : RootResult{hi, std::abs(f_hi), 0};
  for (int it = 1; it <= max_iterations; ++it) {
    if (best.residual <= f_tol) {
      best.iterations = it - 1;
      return best;
    }
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) {
      best.iterations = it - 1;
      return best;
    }
    const double fm = f(mid);
    if (std::isnan(fm)) throw ConvergenceError("bisection: NaN residual");
    if (std::abs(fm) < best.residual) best = {mid, std::abs(fm), it};
    if (fm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (best.residual <= f_tol) return best;
  throw ConvergenceError("bisection: no convergence after " + std::to_string(max_iterations) +
                         " iterations");
}

LineFit fit_line(const double* x, const double* y, std::size_t count) {
  if (count < 2) throw DomainError("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(count));
  return fit;
}

}  // namespace kinfront::numerics
