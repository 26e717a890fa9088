#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kinfront::telegraph {

/// Cell-centred grid in 1 or 2 dimensions on [x_min, x_min + nx dx]^dim.
struct TelegraphGrid {
  int dim = 1;
  int nx = 8;
  double x_min = 0.0;
  double dx = 1.0;

  static TelegraphGrid make(int dim, double x_min, double x_max, int nx);
  /// Symmetric grid on [-half_width, half_width]^dim with an odd cell count.
  static TelegraphGrid centred(int dim, double half_width, double dx_target);

  double coord(int i) const { return x_min + (i + 0.5) * dx; }
  std::size_t size() const;
};

/// rho and w = rho_t on the grid; 2-D arrays are row-major with x1 fastest.
struct TelegraphState {
  std::vector<double> rho;
  std::vector<double> w;
  double t = 0.0;
  double tau = 1.0;
};

struct TelegraphOptions {
  bool reaction = true;
  /// When set, the damping coefficient 1 - tau + 2 tau rho is replaced by
  /// this constant.
  bool frozen_damping = false;
  double damping = 1.0;
};

/// Largest stable step for a given cfl: cfl * dx * sqrt(tau).
double max_dt(const TelegraphGrid& grid, double tau, double cfl = 0.5);

TelegraphState make_state(const TelegraphGrid& grid, std::span<const double> rho0, double tau);
TelegraphState make_state(const TelegraphGrid& grid, std::span<const double> rho0,
                          std::span<const double> w0, double tau);

/// One kick-drift-kick step of rho_t = w, tau w_t = Lap rho + rho(1-rho) -
/// (1 - tau + 2 tau rho) w. The closing kick treats the damping implicitly.
/// Neumann boundaries. Throws SimulationError on CFL violation or NaN.
void step(TelegraphState& state, const TelegraphGrid& grid, double dt,
          const TelegraphOptions& options = {});

/// Damped-wave energy tau/2 |w|^2 + 1/2 |grad rho|^2 (times cell volume).
double wave_energy(const TelegraphState& state, const TelegraphGrid& grid);

struct GaussianBump {
  double epsilon = 0.0;
  double delta = 0.1;

  /// epsilon <= delta^(5/4)
  bool in_proof_regime() const;
  void validate() const;
  double operator()(double r2) const;
};

std::vector<double> sample_bump(const TelegraphGrid& grid, const GaussianBump& bump);

struct ExtremaSample {
  double t = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
};

struct RunExtrema {
  double min_rho = 0.0;
  double max_rho = 0.0;
  double t_min = 0.0;
  std::vector<ExtremaSample> samples;  // one per step, including t = 0
  std::vector<double> final_rho;
};

/// Integrates to t_end with a fixed cfl; the last step is shortened to land
/// on t_end.
RunExtrema run(TelegraphState state, const TelegraphGrid& grid, double t_end, double cfl = 0.5,
               const TelegraphOptions& options = {});

struct NegativityReport {
  double epsilon = 0.0;
  double delta = 0.0;
  double dx = 0.0;
  double min_rho = 0.0;
  double t_min = 0.0;
  double error_estimate = 0.0;
  double threshold = 0.0;  // -10 * error_estimate
  int longest_run = 0;     // consecutive steps with min_rho < threshold
  bool negative = false;
  bool in_proof_regime = true;
  std::vector<ExtremaSample> samples;
  std::vector<double> final_rho;  // filled when SweepOptions::keep_final is set
};

struct SweepOptions {
  double dx = 0.02;
  double half_width = 3.5;
  double cfl = 0.5;
  int persistence_steps = 10;
  bool keep_final = false;
};

/// Undershoot of the 1-D no-reaction run from the same bump profile and dx;
/// that problem keeps rho >= 0 exactly, so any undershoot is scheme error.
double scheme_error_estimate(const GaussianBump& bump, double tau, double t_end,
                             const SweepOptions& options);

/// 2-D run from epsilon exp(-|x|^2/delta) with w = 0. Negativity requires
/// min_rho < -10 * scheme_error_estimate for persistence_steps consecutive
/// steps.
NegativityReport negativity_run_2d(const GaussianBump& bump, double tau, double t_end,
                                   const SweepOptions& options = {});

struct SearchResult {
  std::vector<NegativityReport> reports;
  int best = -1;  // most negative qualifying report, -1 when none
  bool found() const { return best >= 0; }
  std::string summary() const;
};

SearchResult negativity_search_2d(double tau, std::span<const std::pair<double, double>> eps_delta,
                                  double t_end, const SweepOptions& options = {});

/// The sweep epsilon = delta^(5/4) for the given deltas.
std::vector<std::pair<double, double>> proof_regime_pairs(std::span<const double> deltas);

struct Stability {
  double min_coarse = 0.0;
  double min_fine = 0.0;
  bool stable = false;  // min_fine <= 0.9 * min_coarse
};

/// Reruns a witness at half the grid spacing.
Stability resolution_check(const NegativityReport& witness, double tau, double t_end,
                           const SweepOptions& options = {});

struct BoundCheck {
  double min_rho = 0.0;
  double max_rho = 0.0;
  double kinetic_linf_diff = 0.0;
  double kinetic_tolerance = 0.0;
};

/// 1-D extrema from rho0 with w = 0. The kinetic two-speed solver started
/// from p+ = p- = rho0 carries rho_t = rho0 (1 - rho0) at t = 0, so the
/// cross-check reruns the telegraph solver from that initial velocity and
/// compares final profiles on the same cells. Throws SimulationError when
/// they differ by more than tolerance_per_dx * dx.
BoundCheck bound_check_1d(std::span<const double> rho0, const TelegraphGrid& grid, double tau,
                          double t_end, double cfl = 0.5, double tolerance_per_dx = 0.5);

}  // namespace kinfront::telegraph
