#include "kinfront/discrete_kinetic2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kinfront/errors.hpp"

namespace kinfront::discrete2d {

namespace {

constexpr double kCflSlack = 1e-12;
constexpr double kNegativeLevel = -1e-12;

double logistic_flow(double r, double h) {
  const double g = std::expm1(h);
  return r * (1.0 + g) / (1.0 + r * g);
}

// Shift along x1 (dir = +1 takes from i-1, dir = -1 from i+1).
void transport_x1(std::vector<double>& p, const Grid2D& g, double nu, int dir,
                  std::vector<double>& out) {
  out = p;
  const int n = g.nx;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int src = i - dir;
      if (src < 0 || src >= n) continue;
      out[g.index(i, j)] = (1.0 - nu) * p[g.index(i, j)] + nu * p[g.index(src, j)];
    }
  }
  p.swap(out);
}

void transport_x2(std::vector<double>& p, const Grid2D& g, double nu, int dir,
                  std::vector<double>& out) {
  out = p;
  const int n = g.nx;
  for (int j = 0; j < n; ++j) {
    const int src = j - dir;
    if (src < 0 || src >= n) continue;
    for (int i = 0; i < n; ++i) {
      out[g.index(i, j)] = (1.0 - nu) * p[g.index(i, j)] + nu * p[g.index(i, src)];
    }
  }
  p.swap(out);
}

double field_min(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
}

}  // namespace

Grid2D Grid2D::make(double half_width, int nx, double cfl, double speed) {
  if (!(half_width > 0.0)) throw DomainError("Grid2D: half_width must be > 0");
  if (nx < 3 || nx % 2 == 0) throw DomainError("Grid2D: nx must be odd and >= 3");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("Grid2D: cfl must lie in (0, 1]");
  if (!(speed > 0.0)) throw DomainError("Grid2D: speed must be > 0");
  Grid2D g;
  g.nx = nx;
  g.half_width = half_width;
  g.dx = 2.0 * half_width / nx;
  g.cfl = cfl;
  g.dt = cfl * g.dx / speed;
  return g;
}

Grid2D Grid2D::for_probe(double delta, int cells_per_delta, double t_end, double speed) {
  if (!(delta > 0.0)) throw DomainError("Grid2D: delta must be > 0");
  if (cells_per_delta < 1) throw DomainError("Grid2D: cells_per_delta must be >= 1");
  if (!(t_end >= 0.0)) throw DomainError("Grid2D: t_end must be >= 0");
  const double dx = delta / cells_per_delta;
  const double reach = 2.0 * speed * t_end + 2.0 * delta;
  int half_cells = static_cast<int>(std::ceil(reach / dx)) + 4;
  const int nx = 2 * half_cells + 1;
  return make(0.5 * nx * dx, nx, 1.0, speed);
}

std::string to_string(Reaction2D r) {
  switch (r) {
    case Reaction2D::logistic: return "logistic";
    case Reaction2D::logistic_plus: return "logistic-plus";
    case Reaction2D::per_velocity: return "per-velocity";
  }
  return "unknown";
}

Reaction2D reaction_from_string(const std::string& name) {
  if (name == "logistic" || name == "local") return Reaction2D::logistic;
  if (name == "logistic-plus" || name == "nonlocal-plus") return Reaction2D::logistic_plus;
  if (name == "per-velocity") return Reaction2D::per_velocity;
  throw DomainError("unknown reaction '" + name + "'");
}

double DiscreteKineticState2D::min_value() const {
  return std::min({field_min(p_e1), field_min(p_e2), field_min(p_me1), field_min(p_me2)});
}

double transport_speed(double tau) {
  if (!(tau > 0.0)) throw DomainError("tau must be > 0");
  return std::sqrt(2.0 / tau);
}

double cone_amplitude(double tau) {
  if (!(tau > 0.0)) throw DomainError("tau must be > 0");
  return 4.0 * (1.0 - 3.0 / tau);
}

DiscreteKineticState2D init_cones(const Grid2D& grid, double tau) {
  if (!(tau > 3.0)) throw DomainError("init_cones: tau must exceed 3 (amplitude 4(1-3/tau) > 0)");
  const double amp = cone_amplitude(tau);
  DiscreteKineticState2D s;
  s.tau = tau;
  s.a = transport_speed(tau);
  const std::size_t n = grid.size();
  s.p_e1.assign(n, 0.0);
  s.p_e2.assign(n, 0.0);
  s.p_me1.assign(n, 0.0);
  s.p_me2.assign(n, 0.0);
  // Diagonal cells have centres on the cone edges; integer offsets keep them
  // out of every cone exactly, whatever the rounding of coord().
  const int c = grid.centre();
  for (int j = 0; j < grid.nx; ++j) {
    const int x2 = j - c;
    for (int i = 0; i < grid.nx; ++i) {
      const int x1 = i - c;
      const std::size_t k = grid.index(i, j);
      if (std::abs(x2) < -x1) s.p_e1[k] = amp;
      if (std::abs(x1) < x2) s.p_me2[k] = amp;
      if (std::abs(x2) < x1) s.p_me1[k] = amp;
      const double r = s.rho(k);
      if (r < 0.0 || r > 1.0) throw SimulationError("init_cones: initial rho outside [0, 1]");
    }
  }
  return s;
}

DiscreteKineticState2D uniform_state(const Grid2D& grid, double tau, double rho0) {
  DiscreteKineticState2D s;
  s.tau = tau;
  s.a = transport_speed(tau);
  const std::size_t n = grid.size();
  s.p_e1.assign(n, rho0);
  s.p_e2.assign(n, rho0);
  s.p_me1.assign(n, rho0);
  s.p_me2.assign(n, rho0);
  return s;
}

double source_term(double p, double rho, double tau, Reaction2D reaction) {
  const double relax = (rho - p) / tau;
  switch (reaction) {
    case Reaction2D::logistic: return relax + rho * (1.0 - rho);
    case Reaction2D::logistic_plus: return relax + rho * std::max(0.0, 1.0 - rho);
    case Reaction2D::per_velocity: return relax + p * (1.0 - p);
  }
  return relax;
}

double probe_source(double rho, double tau) { return rho / tau + rho * (1.0 - rho); }

void step(DiscreteKineticState2D& s, const Grid2D& grid, Reaction2D reaction) {
  const std::size_t n = grid.size();
  if (s.p_e1.size() != n || s.p_e2.size() != n || s.p_me1.size() != n || s.p_me2.size() != n) {
    throw SimulationError("discrete2d: state size does not match the grid");
  }
  const double nu = s.a * grid.dt / grid.dx;
  if (nu > 1.0 + kCflSlack) throw SimulationError("discrete2d: CFL violation");

  thread_local std::vector<double> scratch;
  transport_x1(s.p_e1, grid, nu, +1, scratch);
  transport_x1(s.p_me1, grid, nu, -1, scratch);
  transport_x2(s.p_e2, grid, nu, +1, scratch);
  transport_x2(s.p_me2, grid, nu, -1, scratch);

  const double keep = std::exp(-grid.dt / s.tau);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = s.rho(k);
    double* fields[4] = {&s.p_e1[k], &s.p_e2[k], &s.p_me1[k], &s.p_me2[k]};
    for (double* f : fields) *f = r + (*f - r) * keep;
    switch (reaction) {
      case Reaction2D::logistic:
      case Reaction2D::logistic_plus: {
        if (reaction == Reaction2D::logistic_plus && r >= 1.0) break;
        const double gain = logistic_flow(r, grid.dt) - r;
        for (double* f : fields) *f += gain;
        break;
      }
      case Reaction2D::per_velocity:
        for (double* f : fields) *f = logistic_flow(*f, grid.dt);
        break;
    }
    for (double* f : fields) {
      if (!std::isfinite(*f)) {
        throw SimulationError("discrete2d: non-finite value at t = " + std::to_string(s.t));
      }
    }
  }
  s.t += grid.dt;
}

std::string to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::negative: return "negative";
    case ProbeStatus::nonnegative: return "nonnegative";
    case ProbeStatus::insufficient_overlap: return "insufficient_overlap";
  }
  return "unknown";
}

ProbeResult negativity_probe(double tau, double delta, double t_end, const ProbeOptions& options) {
  if (!(tau > 4.0)) throw DomainError("negativity_probe: tau must exceed 4");
  if (!(delta > 0.0)) throw DomainError("negativity_probe: delta must be > 0");
  if (!(t_end > 0.0)) throw DomainError("negativity_probe: t_end must be > 0");
  const double a = transport_speed(tau);
  const Grid2D grid = Grid2D::for_probe(delta, options.cells_per_delta, t_end, a);
  DiscreteKineticState2D s = init_cones(grid, tau);

  ProbeResult res;
  res.dx = grid.dx;
  res.overlap_target = 3.0 * (1.0 - 0.1) * (1.0 - 3.0 / tau);
  const int i0 = grid.centre();
  const int j_start = grid.centre() - options.cells_per_delta;

  // Returns true when the probe value is negative.
  auto record = [&] {
    ProbeSample smp;
    smp.t = s.t;
    smp.global_min = s.min_value();
    res.global_min = std::min(res.global_min, smp.global_min);
    const auto it = std::min_element(s.p_e2.begin(), s.p_e2.end());
    if (*it < res.field_min_e2) {
      const std::size_t at = static_cast<std::size_t>(it - s.p_e2.begin());
      res.field_min_e2 = *it;
      res.field_min_x1 = grid.coord(static_cast<int>(at % grid.nx));
      res.field_min_x2 = grid.coord(static_cast<int>(at / grid.nx));
      res.field_min_t = s.t;
    }
    const int j = j_start + static_cast<int>(std::lround(a * s.t / grid.dx));
    bool negative = false;
    if (j >= 0 && j < grid.nx) {
      const std::size_t idx = grid.index(i0, j);
      smp.p_e2_at_probe = s.p_e2[idx];
      smp.rho_at_probe = s.rho(idx);
      res.max_overlap_rho = std::max(res.max_overlap_rho, smp.rho_at_probe);
      if (smp.p_e2_at_probe < res.min_value) {
        res.min_value = smp.p_e2_at_probe;
        res.min_t = s.t;
        res.min_x2 = grid.coord(j);
      }
      negative = smp.p_e2_at_probe < kNegativeLevel;
    }
    res.samples.push_back(smp);
    return negative;
  };

  record();
  const int steps = static_cast<int>(std::ceil(t_end / grid.dt - 1e-9));
  int run = 0;
  for (int k = 1; k <= steps; ++k) {
    step(s, grid, options.reaction);
    if (record()) {
      ++run;
      res.longest_negative_run = std::max(res.longest_negative_run, run);
    } else {
      run = 0;
    }
  }
  res.steps = steps;
  if (options.on_final) options.on_final(s, grid);
  if (res.longest_negative_run >= options.persistence_steps) {
    res.status = ProbeStatus::negative;
  } else if (res.max_overlap_rho < res.overlap_target) {
    res.status = ProbeStatus::insufficient_overlap;
  } else {
    res.status = ProbeStatus::nonnegative;
  }
  return res;
}

}  // namespace kinfront::discrete2d
