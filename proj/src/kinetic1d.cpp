#include "kinfront/kinetic1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kinfront/errors.hpp"
#include "kinfront/numerics.hpp"

namespace kinfront::kinetic1d {

namespace {

constexpr double kCflSlack = 1e-12;

// Exact solution of r' = r (1 - r) after time h.
double logistic_flow(double r, double h) {
  const double g = std::expm1(h);
  return r * (1.0 + g) / (1.0 + r * g);
}

double reaction_flow(double r, double h, Nonlinearity nl) {
  if (nl == Nonlinearity::logistic_plus && r >= 1.0) return r;
  return logistic_flow(r, h);
}

void upwind_right(std::vector<double>& p, double nu, std::vector<double>& scratch) {
  const int n = static_cast<int>(p.size());
  scratch.resize(p.size());
  scratch[0] = p[0];
  for (int i = 1; i < n; ++i) scratch[i] = (1.0 - nu) * p[i] + nu * p[i - 1];
  p.swap(scratch);
}

void upwind_left(std::vector<double>& p, double nu, std::vector<double>& scratch) {
  const int n = static_cast<int>(p.size());
  scratch.resize(p.size());
  scratch[n - 1] = p[n - 1];
  for (int i = 0; i < n - 1; ++i) scratch[i] = (1.0 - nu) * p[i] + nu * p[i + 1];
  p.swap(scratch);
}

void advance(KineticState1D& state, const Grid1D& grid, Nonlinearity nl, double dt) {
  if (static_cast<int>(state.p_plus.size()) != grid.nx ||
      static_cast<int>(state.p_minus.size()) != grid.nx) {
    throw SimulationError("kinetic1d: state size does not match the grid");
  }
  const double nu = transport_speed(state.tau) * dt / grid.dx;
  if (nu > 1.0 + kCflSlack) {
    throw SimulationError("kinetic1d: CFL violation (nu = " + std::to_string(nu) + ")");
  }
  thread_local std::vector<double> scratch;
  upwind_right(state.p_plus, nu, scratch);
  upwind_left(state.p_minus, nu, scratch);

  const double decay = std::exp(-dt / (state.tau * state.epsilon));
  const double reaction_time = dt / state.epsilon;
  for (int i = 0; i < grid.nx; ++i) {
    const double r = 0.5 * (state.p_plus[i] + state.p_minus[i]);
    const double half_flux = 0.5 * (state.p_plus[i] - state.p_minus[i]) * decay;
    const double r_new = reaction_flow(r, reaction_time, nl);
    state.p_plus[i] = r_new + half_flux;
    state.p_minus[i] = r_new - half_flux;
    if (!std::isfinite(state.p_plus[i]) || !std::isfinite(state.p_minus[i])) {
      throw SimulationError("kinetic1d: non-finite value at cell " + std::to_string(i) +
                            ", t = " + std::to_string(state.t));
    }
  }
  state.t += dt;
}

}  // namespace

Grid1D Grid1D::make(double x_min, double x_max, int nx, double cfl, double speed) {
  if (!(x_max > x_min)) throw DomainError("Grid1D: x_max must exceed x_min");
  if (nx < 8) throw DomainError("Grid1D: nx must be >= 8");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("Grid1D: cfl must lie in (0, 1]");
  if (!(speed > 0.0)) throw DomainError("Grid1D: transport speed must be > 0");
  Grid1D g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.nx = nx;
  g.dx = (x_max - x_min) / nx;
  g.cfl = cfl;
  g.dt = cfl * g.dx / speed;
  return g;
}

std::vector<double> KineticState1D::rho() const {
  std::vector<double> out(p_plus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (p_plus[i] + p_minus[i]);
  return out;
}

double transport_speed(double tau) {
  if (!(tau > 0.0)) throw DomainError("tau must be > 0");
  return 1.0 / std::sqrt(tau);
}

double upper_bound(double tau) {
  if (!(tau > 0.0)) throw DomainError("tau must be > 0");
  return tau <= 1.0 ? 1.0 : (1.0 + tau) * (1.0 + tau) / (4.0 * tau);
}

KineticState1D make_state(std::span<const double> rho0, double tau, double epsilon) {
  if (!(tau > 0.0)) throw DomainError("tau must be > 0");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  KineticState1D s;
  s.p_plus.assign(rho0.begin(), rho0.end());
  s.p_minus.assign(rho0.begin(), rho0.end());
  s.tau = tau;
  s.epsilon = epsilon;
  return s;
}

KineticState1D indicator_state(const Grid1D& grid, double left, double right, double tau,
                               double epsilon) {
  std::vector<double> rho0(grid.nx, 0.0);
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.x(i);
    if (x >= left && x <= right) rho0[i] = 1.0;
  }
  return make_state(rho0, tau, epsilon);
}

void step(KineticState1D& state, const Grid1D& grid, Nonlinearity nonlinearity) {
  advance(state, grid, nonlinearity, grid.dt);
}

FieldExtrema field_extrema(const KineticState1D& state) {
  FieldExtrema e{std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < state.p_plus.size(); ++i) {
    e.min_field = std::min({e.min_field, state.p_plus[i], state.p_minus[i]});
    e.max_field = std::max({e.max_field, state.p_plus[i], state.p_minus[i]});
  }
  return e;
}

double front_position(const KineticState1D& state, const Grid1D& grid, double level) {
  for (int i = grid.nx - 1; i >= 0; --i) {
    const double r = state.rho(i);
    if (r >= level) {
      if (i == grid.nx - 1) return grid.x(i);
      const double r_next = state.rho(i + 1);
      const double frac = (r - level) / (r - r_next);
      return grid.x(i) + frac * grid.dx;
    }
  }
  return grid.x_min;
}

double support_edge(const KineticState1D& state, const Grid1D& grid, double threshold) {
  for (int i = grid.nx - 1; i >= 0; --i) {
    if (state.rho(i) > threshold) return grid.x(i);
  }
  return grid.x_min;
}

FrontTrace run_and_track(KineticState1D state, const Grid1D& grid, double t_end,
                         const TrackOptions& options) {
  if (!(options.level > 0.0 && options.level < 1.0)) {
    throw DomainError("run_and_track: level must lie in (0, 1)");
  }
  if (options.steps_per_sample < 1) throw DomainError("run_and_track: steps_per_sample >= 1");
  FrontTrace trace;
  trace.level = options.level;
  trace.extrema = field_extrema(state);
  const double margin = 5.0 * transport_speed(state.tau) * state.tau;

  auto sample = [&] {
    const double pos = front_position(state, grid, options.level);
    if (grid.x_max - pos < margin) {
      throw SimulationError("run_and_track: front within 5 mean free paths of the boundary at t = " +
                            std::to_string(state.t) + "; enlarge the domain");
    }
    trace.times.push_back(state.t);
    trace.positions.push_back(pos);
    trace.support_edges.push_back(support_edge(state, grid, options.support_threshold));
    if (options.on_sample) options.on_sample(state);
  };

  sample();
  const long steps = std::lround(std::ceil(t_end / grid.dt - 1e-9));
  for (long k = 1; k <= steps; ++k) {
    advance(state, grid, options.nonlinearity, grid.dt);
    const FieldExtrema e = field_extrema(state);
    trace.extrema.min_field = std::min(trace.extrema.min_field, e.min_field);
    trace.extrema.max_field = std::max(trace.extrema.max_field, e.max_field);
    if (k % options.steps_per_sample == 0 || k == steps) sample();
  }

  const std::size_t count = trace.times.size();
  const std::size_t first =
      static_cast<std::size_t>(std::floor((1.0 - options.fit_fraction) * static_cast<double>(count)));
  if (count - first >= 2) {
    const numerics::LineFit fit =
        numerics::fit_line(trace.times.data() + first, trace.positions.data() + first, count - first);
    trace.fitted_speed = fit.slope;
    trace.fit_residual = fit.rms_residual;
  }
  return trace;
}

TailProfile tail_profile(const KineticState1D& state, const Grid1D& grid, double support_threshold,
                         double level) {
  TailProfile t;
  t.support_edge = support_edge(state, grid, support_threshold);
  t.front_pos = front_position(state, grid, level);
  t.gap = std::max(0.0, t.support_edge - t.front_pos);
  return t;
}

TelegraphRun telegraph_via_kinetic(std::span<const double> rho0, const Grid1D& grid, double tau,
                                   double t_end) {
  for (double r : rho0) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("telegraph_via_kinetic: rho0 must lie in [0,1]");
  }
  if (static_cast<int>(rho0.size()) != grid.nx) {
    throw DomainError("telegraph_via_kinetic: rho0 size does not match the grid");
  }
  KineticState1D state = make_state(rho0, tau);
  TelegraphRun run;
  run.min_rho = *std::min_element(rho0.begin(), rho0.end());
  run.max_rho = *std::max_element(rho0.begin(), rho0.end());
  const double dt_max = grid.cfl * grid.dx / transport_speed(tau);
  while (state.t < t_end - 1e-12 * std::max(1.0, t_end)) {
    const double dt = std::min(dt_max, t_end - state.t);
    advance(state, grid, Nonlinearity::logistic, dt);
    for (int i = 0; i < grid.nx; ++i) {
      const double r = state.rho(i);
      run.min_rho = std::min(run.min_rho, r);
      run.max_rho = std::max(run.max_rho, r);
    }
    if (run.min_rho < -1e-8 || run.max_rho > 2.0 + 1e-8) {
      throw SimulationError("telegraph_via_kinetic: rho left [0, 2] at t = " +
                            std::to_string(state.t) + " (scheme defect)");
    }
  }
  run.rho = state.rho();
  run.t = state.t;
  return run;
}

}  // namespace kinfront::kinetic1d
