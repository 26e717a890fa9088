#pragma once

#include <span>
#include <vector>

#include "kinfront/extended_real.hpp"
#include "kinfront/sphere_integrals.hpp"

namespace kinfront {

/// Dimension n, relaxation time tau and the pure-transport speed
/// a = sqrt(n / tau).
struct ModelParams {
  int n = 1;
  double tau = 1.0;
  double a = 1.0;

  /// Validates n >= 1 and tau > 0 (finite) and derives a.
  static ModelParams make(int n, double tau);
};

enum class HamiltonianBranch { transport_branch, implicit_branch, closed_form };

const char* to_string(HamiltonianBranch b);

struct HamiltonianEval {
  double p_norm = 0.0;
  double value = 0.0;
  HamiltonianBranch branch = HamiltonianBranch::closed_form;
  double residual = 0.0;  // relative root residual; 0 for closed forms
};

/// Effective Hamiltonian H(p). Isotropic, so only |p| matters. Uses the
/// closed forms for n <= 3 and the implicit two-branch definition otherwise.
HamiltonianEval hamiltonian(const ModelParams& params, std::span<const double> p);
HamiltonianEval hamiltonian_radial(const ModelParams& params, double p_norm);

/// Implicit route for every n: for |p| > 0 solve
///   Phi((-alpha + 1/tau) / (a |p|)) = tau a |p| / (1 + tau)
/// for alpha by bisection, unless Phi(1) <= tau a |p| / (1 + tau), in which
/// case H = -a |p| + 1/tau.
HamiltonianEval hamiltonian_implicit(const ModelParams& params, double p_norm);

double hamiltonian_1d(double tau, double p);
double hamiltonian_2d(double tau, double p_norm);
double hamiltonian_3d(double tau, double p_norm);

/// |p| above which the transport branch is active: (1+tau) Phi(1) / (a tau).
/// +inf for n <= 3.
ExtendedReal transport_threshold(const ModelParams& params);

/// lim_{|p| -> inf} (H(p) + a |p|). Positive means H(p)/|p| > -a for large
/// |p|, so the supremum defining the front speed is attained at finite |p|.
double transport_intercept(const ModelParams& params);

/// |H^tau(p) + |p|^2 + 1| for each tau (distance to the Fisher-KPP
/// Hamiltonian).
std::vector<double> hydro_limit_residual(SphereDim n, std::span<const double> p,
                                         std::span<const double> taus);

}  // namespace kinfront
