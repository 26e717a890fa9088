#pragma once

#include <functional>
#include <span>
#include <vector>

namespace kinfront::kinetic1d {

/// Uniform cell-centred grid on [x_min, x_max] with a time step tied to the
/// transport speed by dt = cfl * dx / speed.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int nx = 8;
  double dx = 0.0;
  double dt = 0.0;
  double cfl = 1.0;

  static Grid1D make(double x_min, double x_max, int nx, double cfl, double transport_speed);
  double x(int i) const { return x_min + (i + 0.5) * dx; }
};

enum class Nonlinearity { logistic, logistic_plus };

/// Right- and left-mover densities p+ and p-, with rho = (p+ + p-)/2.
/// epsilon < 1 selects the hyperbolically scaled system, whose relaxation
/// and reaction terms carry a factor 1/epsilon.
struct KineticState1D {
  std::vector<double> p_plus;
  std::vector<double> p_minus;
  double t = 0.0;
  double tau = 1.0;
  double epsilon = 1.0;

  double rho(int i) const { return 0.5 * (p_plus[i] + p_minus[i]); }
  std::vector<double> rho() const;
};

/// Transport speed 1/sqrt(tau).
double transport_speed(double tau);

/// A priori bound: 1 for tau <= 1, (1+tau)^2 / (4 tau) otherwise.
double upper_bound(double tau);

/// Both fields set to rho0 (zero initial flux).
KineticState1D make_state(std::span<const double> rho0, double tau, double epsilon = 1.0);

/// Indicator of [left, right] sampled at cell centres, both fields equal.
KineticState1D indicator_state(const Grid1D& grid, double left, double right, double tau,
                               double epsilon = 1.0);

/// One split step: upwind transport at speed +-1/sqrt(tau), exact decay of
/// the flux mode p+ - p- at rate 1/(tau epsilon), then the exact logistic
/// flow of rho over dt/epsilon added equally to both fields. Zero-gradient
/// boundaries. Throws SimulationError on a CFL violation or a non-finite value.
void step(KineticState1D& state, const Grid1D& grid, Nonlinearity nonlinearity);

struct FieldExtrema {
  double min_field = 0.0;  // min over p+ and p-
  double max_field = 0.0;
};

FieldExtrema field_extrema(const KineticState1D& state);

/// Rightmost point where rho >= level, linearly interpolated between cells.
/// Returns x_min when no cell reaches the level.
double front_position(const KineticState1D& state, const Grid1D& grid, double level);

/// Rightmost cell centre with rho > threshold.
double support_edge(const KineticState1D& state, const Grid1D& grid, double threshold);

struct FrontTrace {
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<double> support_edges;
  double level = 0.5;
  double fitted_speed = 0.0;
  double fit_residual = 0.0;
  FieldExtrema extrema;  // over the whole run
};

struct TrackOptions {
  Nonlinearity nonlinearity = Nonlinearity::logistic_plus;
  double level = 0.5;
  int steps_per_sample = 10;
  double support_threshold = 0.0;
  double fit_fraction = 0.5;  // fit over the last half of the trace
  /// Called after every sample with the current state.
  std::function<void(const KineticState1D&)> on_sample;
};

/// Integrate to t_end recording the front. Throws SimulationError if the
/// front comes within 5 mean free paths (a tau) of the right boundary.
FrontTrace run_and_track(KineticState1D state, const Grid1D& grid, double t_end,
                         const TrackOptions& options = {});

struct TailProfile {
  double support_edge = 0.0;
  double front_pos = 0.0;
  double gap = 0.0;
};

TailProfile tail_profile(const KineticState1D& state, const Grid1D& grid,
                         double support_threshold = 0.0, double level = 0.5);

struct TelegraphRun {
  std::vector<double> rho;
  double min_rho = 0.0;
  double max_rho = 0.0;
  double t = 0.0;
};

/// Solves the reactive-telegraph equation through the equivalent kinetic
/// system (p+ = p- = rho0 at t = 0, logistic reaction). Throws
/// SimulationError if rho leaves [0, 2] by more than 1e-8.
TelegraphRun telegraph_via_kinetic(std::span<const double> rho0, const Grid1D& grid, double tau,
                                   double t_end);

}  // namespace kinfront::kinetic1d
