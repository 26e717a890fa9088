#include "kinfront/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kinfront/errors.hpp"
#include "kinfront/numerics.hpp"

namespace kinfront {

namespace {

constexpr double kRootTol = 1e-15;

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("relaxation time tau must be finite and > 0");
  }
}

double norm_of(std::span<const double> p) {
  double s = 0.0;
  for (double c : p) {
    if (!std::isfinite(c)) throw DomainError("hamiltonian: p must be finite");
    s += c * c;
  }
  return std::sqrt(s);
}

// x coth(x) - 1, accurate near 0.
double x_coth_x_minus_one(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return x2 / 3.0 - x2 * x2 / 45.0;
  }
  return x / std::tanh(x) - 1.0;
}

}  // namespace

ModelParams ModelParams::make(int n, double tau) {
  if (n < 1) throw DomainError("dimension n must be >= 1, got " + std::to_string(n));
  require_tau(tau);
  return {n, tau, std::sqrt(static_cast<double>(n) / tau)};
}

const char* to_string(HamiltonianBranch b) {
  switch (b) {
    case HamiltonianBranch::transport_branch:
      return "transport_branch";
    case HamiltonianBranch::implicit_branch:
      return "implicit_branch";
    case HamiltonianBranch::closed_form:
      return "closed_form";
  }
  return "unknown";
}

// The closed forms are written as -1 - (positive correction) so that the
// 1/tau terms cancel analytically rather than in floating point.

double hamiltonian_1d(double tau, double p) {
  require_tau(tau);
  if (!std::isfinite(p)) throw DomainError("hamiltonian_1d: p must be finite");
  const double half_rate = (1.0 + tau) / (2.0 * tau);
  const double b = p * p / tau;
  return -1.0 - b / (std::sqrt(half_rate * half_rate + b) + half_rate);
}

double hamiltonian_2d(double tau, double p_norm) {
  require_tau(tau);
  if (!(p_norm >= 0.0) || !std::isfinite(p_norm)) {
    throw DomainError("hamiltonian_2d: |p| must be finite and >= 0");
  }
  const double rate = (1.0 + tau) / tau;
  const double b = 2.0 * p_norm * p_norm / tau;
  return -1.0 - b / (std::sqrt(rate * rate + b) + rate);
}

double hamiltonian_3d(double tau, double p_norm) {
  require_tau(tau);
  if (!(p_norm >= 0.0) || !std::isfinite(p_norm)) {
    throw DomainError("hamiltonian_3d: |p| must be finite and >= 0");
  }
  // H = 1/tau - (sqrt(3) p / sqrt(tau)) coth(x),  x = sqrt(3 tau) p / (1 + tau)
  //   = -1 - ((1 + tau)/tau) (x coth x - 1).
  const double x = std::sqrt(3.0 * tau) * p_norm / (1.0 + tau);
  return -1.0 - ((1.0 + tau) / tau) * x_coth_x_minus_one(x);
}

ExtendedReal transport_threshold(const ModelParams& params) {
  const PhiEval at_one = phi(SphereDim(params.n), 1.0);
  if (!at_one.value.is_finite()) return ExtendedReal::pos_inf();
  return ExtendedReal::finite((1.0 + params.tau) * at_one.value.value() /
                              (params.a * params.tau));
}

double transport_intercept(const ModelParams& params) {
  // n = 1: H + a p -> (1 - tau) / (2 tau). For n >= 2 the closed forms
  // (n = 2, 3) and the transport branch (n >= 4) all tend to 1/tau.
  if (params.n == 1) return (1.0 - params.tau) / (2.0 * params.tau);
  return 1.0 / params.tau;
}

HamiltonianEval hamiltonian_implicit(const ModelParams& params, double p_norm) {
  if (!(p_norm >= 0.0) || !std::isfinite(p_norm)) {
    throw DomainError("hamiltonian: |p| must be finite and >= 0");
  }
  HamiltonianEval out;
  out.p_norm = p_norm;
  if (p_norm == 0.0) {
    out.value = -1.0;
    out.branch = HamiltonianBranch::implicit_branch;
    return out;
  }
  const SphereDim dim(params.n);
  const double ap = params.a * p_norm;
  const double target = params.tau * ap / (1.0 + params.tau);

  const PhiEval at_one = phi(dim, 1.0);
  // The boundary case Phi(1) == target goes to the transport branch.
  if (at_one.value.is_finite() && at_one.value.value() <= target) {
    out.value = -ap + 1.0 / params.tau;
    out.branch = HamiltonianBranch::transport_branch;
    return out;
  }

  // g(alpha) = Phi(s(alpha)) - target is increasing in alpha, with
  // s(alpha) = (1/tau - alpha) / (a|p|) >= 1, i.e. alpha <= 1/tau - a|p|.
  auto s_of = [&](double alpha) { return (1.0 / params.tau - alpha) / ap; };
  auto g = [&](double alpha) {
    const double s = std::max(1.0, s_of(alpha));
    const PhiEval e = phi(dim, s);
    if (!e.value.is_finite()) return std::numeric_limits<double>::infinity();
    return (e.value.value() - target) / target;
  };

  const double alpha_hi = 1.0 / params.tau - ap;
  double step = 1.0;
  double alpha_lo = alpha_hi - step;
  int expansions = 0;
  while (g(alpha_lo) >= 0.0) {
    step *= 2.0;
    alpha_lo = alpha_hi - step;
    if (++expansions > 200) throw ConvergenceError("hamiltonian: cannot bracket the root");
  }
  const numerics::RootResult root =
      numerics::bisect_increasing(g, alpha_lo, alpha_hi, kRootTol, 200);
  out.value = root.x;
  out.residual = root.residual;
  out.branch = HamiltonianBranch::implicit_branch;
  return out;
}

HamiltonianEval hamiltonian_radial(const ModelParams& params, double p_norm) {
  if (!(p_norm >= 0.0) || !std::isfinite(p_norm)) {
    throw DomainError("hamiltonian: |p| must be finite and >= 0");
  }
  HamiltonianEval out;
  out.p_norm = p_norm;
  out.branch = HamiltonianBranch::closed_form;
  switch (params.n) {
    case 1:
      out.value = hamiltonian_1d(params.tau, p_norm);
      return out;
    case 2:
      out.value = hamiltonian_2d(params.tau, p_norm);
      return out;
    case 3:
      out.value = hamiltonian_3d(params.tau, p_norm);
      return out;
    default:
      return hamiltonian_implicit(params, p_norm);
  }
}

HamiltonianEval hamiltonian(const ModelParams& params, std::span<const double> p) {
  if (static_cast<int>(p.size()) != params.n) {
    throw DomainError("hamiltonian: p must have n components");
  }
  return hamiltonian_radial(params, norm_of(p));
}

std::vector<double> hydro_limit_residual(SphereDim n, std::span<const double> p,
                                         std::span<const double> taus) {
  if (static_cast<int>(p.size()) != n.value()) {
    throw DomainError("hydro_limit_residual: p must have n components");
  }
  const double pn = norm_of(p);
  std::vector<double> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    const ModelParams params = ModelParams::make(n.value(), tau);
    const double h = hamiltonian_radial(params, pn).value;
    out.push_back(std::abs(h + pn * pn + 1.0));
  }
  return out;
}

}  // namespace kinfront
