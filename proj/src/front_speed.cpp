#include "kinfront/front_speed.hpp"

#include <cmath>
#include <string>

#include "kinfront/errors.hpp"
#include "kinfront/numerics.hpp"

namespace kinfront {

namespace {

constexpr double kInitialLo = 1e-3;
constexpr double kInitialHi = 10.0;
constexpr double kExpansion = 4.0;
constexpr double kFarField = 1e7;
constexpr double kFlatTolerance = 1e-7;
constexpr double kXTol = 1e-12;
constexpr double kAsymptoteTolerance = 1e-6;

double radial_objective(const ModelParams& params, double p) {
  return -hamiltonian_radial(params, p).value / p;
}

}  // namespace

SpeedResult speed(const ModelParams& params) {
  SpeedResult out;
  out.a = params.a;
  auto f = [&](double p) { return radial_objective(params, p); };

  if (transport_intercept(params) <= 0.0) {
    // Objective decreases toward a like |intercept| / p.
    const double near = f(kFarField / 10.0);
    const double far = f(kFarField);
    if (!(near >= far - kFlatTolerance && std::abs(far - params.a) <= kAsymptoteTolerance)) {
      throw ConvergenceError("speed: supremum at infinity but the objective does not approach a");
    }
    out.c = params.a;
    out.p_star = ExtendedReal::pos_inf();
    out.is_hyperbolic = true;
    return out;
  }

  // Bracket the unimodal minimum: walk right from kInitialHi by factors of 4
  // until the objective turns upward.
  double lo = kInitialLo;
  double prev = kInitialHi;
  double f_prev = f(prev);
  double hi = prev * kExpansion;
  double f_hi = f(hi);
  if (f(lo) <= f_prev) {
    hi = prev;
  } else {
    while (f_hi < f_prev) {
      lo = prev;
      prev = hi;
      f_prev = f_hi;
      hi *= kExpansion;
      if (hi > kFarField) {
        // The optimum lies beyond double-precision resolution of the
        // objective (tau -> 1^- in one dimension).
        if (f(kFarField / 10.0) - f(kFarField) <= kFlatTolerance) {
          out.c = f(kFarField);
          out.p_star = ExtendedReal::finite(kFarField);
          out.is_hyperbolic = false;
          return out;
        }
        throw ConvergenceError("speed: could not bracket the optimum");
      }
      f_hi = f(hi);
    }
  }
  const numerics::MinimizeResult m = numerics::golden_section_minimize(f, lo, hi, kXTol);
  out.c = m.value;
  out.p_star = ExtendedReal::finite(m.x);
  out.is_hyperbolic = false;
  return out;
}

ExtendedReal legendre_1d(double tau, double q) {
  if (!(tau > 0.0)) throw DomainError("legendre_1d: tau must be > 0");
  const double t = tau * q * q;
  if (t > 1.0) return ExtendedReal::neg_inf();
  return ExtendedReal::finite(-(1.0 - tau) / (2.0 * tau) +
                              (1.0 + tau) / (2.0 * tau) * std::sqrt(1.0 - t));
}

LegendreEval legendre_radial(const ModelParams& params, double q_norm) {
  if (!(q_norm >= 0.0) || !std::isfinite(q_norm)) {
    throw DomainError("legendre: |q| must be finite and >= 0");
  }
  LegendreEval out;
  out.q_norm = q_norm;
  if (q_norm > params.a) {
    out.value = ExtendedReal::neg_inf();
    return out;
  }
  if (q_norm == params.a) {
    // Infimum approached as |p| -> inf along the asymptote.
    out.value = ExtendedReal::finite(-transport_intercept(params));
    return out;
  }
  // g(t) = -|q| t - h(t) is convex on [0, inf) with g(0) = 1.
  auto g = [&](double t) { return -q_norm * t - hamiltonian_radial(params, t).value; };
  double prev = 0.0;
  double f_prev = g(0.0);
  double hi = 1.0;
  double f_hi = g(hi);
  double lo = 0.0;
  int expansions = 0;
  while (f_hi < f_prev) {
    lo = prev;
    prev = hi;
    f_prev = f_hi;
    hi *= kExpansion;
    f_hi = g(hi);
    if (++expansions > 60) throw ConvergenceError("legendre: could not bracket the minimizer");
  }
  const numerics::MinimizeResult m = numerics::golden_section_minimize(g, lo, hi, kXTol);
  out.value = ExtendedReal::finite(m.value);
  return out;
}

LegendreEval legendre(const ModelParams& params, std::span<const double> q) {
  if (static_cast<int>(q.size()) != params.n) {
    throw DomainError("legendre: q must have n components");
  }
  double s = 0.0;
  for (double c : q) s += c * c;
  return legendre_radial(params, std::sqrt(s));
}

double front_radius(const ModelParams& params, double t, double g0_radius) {
  if (!(t >= 0.0)) throw DomainError("front_radius: t must be >= 0");
  if (!(g0_radius >= 0.0)) throw DomainError("front_radius: G0 radius must be >= 0");
  return g0_radius + speed(params).c * t;
}

std::vector<PhaseRow> phase_diagram(SphereDim n, std::span<const double> taus) {
  std::vector<PhaseRow> rows;
  rows.reserve(taus.size());
  for (double tau : taus) {
    const ModelParams params = ModelParams::make(n.value(), tau);
    const SpeedResult r = speed(params);
    rows.push_back({tau, r.c, r.a, r.is_hyperbolic});
  }
  return rows;
}

}  // namespace kinfront
