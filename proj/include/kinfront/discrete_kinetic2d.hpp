#pragma once

#include <functional>
#include <string>
#include <vector>

namespace kinfront::discrete2d {

/// Square grid on [-half_width, half_width]^2 with an odd number of cells per
/// side, so the centre cell sits on the origin. dt = cfl * dx / a.
struct Grid2D {
  int nx = 3;
  double half_width = 1.0;
  double dx = 0.0;
  double dt = 0.0;
  double cfl = 1.0;

  static Grid2D make(double half_width, int nx, double cfl, double speed);
  /// Grid with dx = delta / cells_per_delta wide enough that nothing moving
  /// at speed a reaches the boundary before t_end.
  static Grid2D for_probe(double delta, int cells_per_delta, double t_end, double speed);

  double coord(int i) const { return -half_width + (i + 0.5) * dx; }
  int centre() const { return (nx - 1) / 2; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nx); }
};

/// Reaction term of the four-velocity model.
///   logistic      rho (1 - rho) added to every velocity (the collision mechanism)
///   logistic_plus rho (1 - rho)_+ added to every velocity
///   per_velocity  p (1 - p) on each velocity separately
enum class Reaction2D { logistic, logistic_plus, per_velocity };

std::string to_string(Reaction2D r);
Reaction2D reaction_from_string(const std::string& name);

/// Densities for the velocities e1, e2, -e1, -e2; index (i, j) is (x1, x2).
struct DiscreteKineticState2D {
  std::vector<double> p_e1;
  std::vector<double> p_e2;
  std::vector<double> p_me1;
  std::vector<double> p_me2;
  double t = 0.0;
  double tau = 1.0;
  double a = 0.0;

  double rho(std::size_t k) const { return 0.25 * (p_e1[k] + p_e2[k] + p_me1[k] + p_me2[k]); }
  double min_value() const;
};

/// sqrt(2 / tau).
double transport_speed(double tau);

/// 4 (1 - 3 / tau).
double cone_amplitude(double tau);

/// Three disjoint cones with vertex at the origin: A on |x2| < -x1 for e1,
/// on |x1| < x2 for -e2, on |x2| < x1 for -e1; e2 starts at zero.
/// Membership is decided at cell centres, with cells on the diagonals left
/// empty. Requires tau > 3.
DiscreteKineticState2D init_cones(const Grid2D& grid, double tau);

/// All four fields equal to rho0 everywhere.
DiscreteKineticState2D uniform_state(const Grid2D& grid, double tau, double rho0);

/// Right-hand side (rho - p)/tau + reaction for a single velocity value.
double source_term(double p, double rho, double tau, Reaction2D reaction);

/// rho/tau + rho (1 - rho): the source seen by the e2 field where it is zero.
double probe_source(double rho, double tau);

/// Exact-shift upwind transport of each field along its velocity, exact
/// relaxation toward rho, then the exact flow of the reaction.
/// Zero-gradient boundaries. Throws SimulationError on CFL violation or NaN.
void step(DiscreteKineticState2D& state, const Grid2D& grid, Reaction2D reaction);

enum class ProbeStatus { negative, nonnegative, insufficient_overlap };
std::string to_string(ProbeStatus s);

struct ProbeSample {
  double t = 0.0;
  double p_e2_at_probe = 0.0;
  double rho_at_probe = 0.0;
  double global_min = 0.0;  // over all velocities and cells
};

struct ProbeResult {
  double min_value = 0.0;  // most negative p(e2) along the probe (a t - delta) e2
  double min_t = 0.0;
  double min_x2 = 0.0;     // probe position at min_t
  double field_min_e2 = 0.0;  // p(., e2, .) over all cells and times
  double field_min_x1 = 0.0;
  double field_min_x2 = 0.0;
  double field_min_t = 0.0;
  double global_min = 0.0;  // over all velocities, cells and times
  double max_overlap_rho = 0.0;
  double overlap_target = 0.0;  // 3 (1 - 0.1) (1 - 3/tau)
  int longest_negative_run = 0;  // consecutive steps with the probe value < -1e-12
  int steps = 0;
  double dx = 0.0;
  ProbeStatus status = ProbeStatus::nonnegative;
  std::vector<ProbeSample> samples;
};

struct ProbeOptions {
  int cells_per_delta = 20;
  Reaction2D reaction = Reaction2D::logistic;
  int persistence_steps = 10;
  /// Called once with the final state.
  std::function<void(const DiscreteKineticState2D&, const Grid2D&)> on_final;
};

/// Runs the cone experiment and follows the e2 field along (a t - delta) e2.
/// The cone tips overlap near the origin for every t > 0, so p(e2) turns
/// negative there early; min_value tracks the moving probe only.
ProbeResult negativity_probe(double tau, double delta, double t_end,
                             const ProbeOptions& options = {});

}  // namespace kinfront::discrete2d
