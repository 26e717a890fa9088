#pragma once

#include <span>
#include <vector>

#include "kinfront/extended_real.hpp"
#include "kinfront/hamiltonian.hpp"

namespace kinfront {

struct SpeedResult {
  double c = 0.0;      // c_{n,tau} = -sup_p H(p)/|p|
  double a = 0.0;      // transport speed, for reference
  ExtendedReal p_star;  // maximizing |p|; +inf when the sup is only approached
  bool is_hyperbolic = false;
};

/// Front speed by golden-section search on the radial profile -H(p)/|p|.
///
/// When the transport intercept lim (H + a|p|) is <= 0 (n = 1, tau >= 1)
/// the supremum is approached only as |p| -> inf, c = a and the front is
/// hyperbolic.
SpeedResult speed(const ModelParams& params);

struct LegendreEval {
  double q_norm = 0.0;
  ExtendedReal value;  // L(q); -inf outside the effective domain
};

/// Concave dual L(q) = inf_p (q.p - H(p)), evaluated by a 1-D convex
/// minimization along the ray p = -t q/|q|.
LegendreEval legendre(const ModelParams& params, std::span<const double> q);
LegendreEval legendre_radial(const ModelParams& params, double q_norm);

/// Closed-form dual for n = 1.
ExtendedReal legendre_1d(double tau, double q);

/// Front radius for a ball-shaped initial set: r0 + c t.
double front_radius(const ModelParams& params, double t, double g0_radius);

struct PhaseRow {
  double tau = 0.0;
  double c = 0.0;
  double a = 0.0;
  bool is_hyperbolic = false;
};

std::vector<PhaseRow> phase_diagram(SphereDim n, std::span<const double> taus);

}  // namespace kinfront
