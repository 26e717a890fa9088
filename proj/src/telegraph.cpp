#include "kinfront/telegraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kinfront/errors.hpp"
#include "kinfront/format.hpp"
#include "kinfront/kinetic1d.hpp"

namespace kinfront::telegraph {

namespace {

constexpr double kMaxCfl = 0.5;

void laplacian(const std::vector<double>& u, const TelegraphGrid& g, std::vector<double>& out) {
  const int n = g.nx;
  const double inv = 1.0 / (g.dx * g.dx);
  out.resize(u.size());
  if (g.dim == 1) {
    for (int i = 0; i < n; ++i) {
      const double l = u[i > 0 ? i - 1 : 0];
      const double r = u[i < n - 1 ? i + 1 : n - 1];
      out[i] = (l - 2.0 * u[i] + r) * inv;
    }
    return;
  }
  for (int j = 0; j < n; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * n;
    const std::size_t down = static_cast<std::size_t>(j > 0 ? j - 1 : 0) * n;
    const std::size_t up = static_cast<std::size_t>(j < n - 1 ? j + 1 : n - 1) * n;
    for (int i = 0; i < n; ++i) {
      const double c = u[row + i];
      const double l = u[row + (i > 0 ? i - 1 : 0)];
      const double r = u[row + (i < n - 1 ? i + 1 : n - 1)];
      out[row + i] = (l + r + u[down + i] + u[up + i] - 4.0 * c) * inv;
    }
  }
}

double damping_of(double rho, double tau, const TelegraphOptions& o) {
  return o.frozen_damping ? o.damping : 1.0 - tau + 2.0 * tau * rho;
}

double reaction_of(double rho, const TelegraphOptions& o) {
  return o.reaction ? rho * (1.0 - rho) : 0.0;
}

}  // namespace

TelegraphGrid TelegraphGrid::make(int dim, double x_min, double x_max, int nx) {
  if (dim != 1 && dim != 2) throw DomainError("telegraph: dim must be 1 or 2");
  if (!(x_max > x_min)) throw DomainError("telegraph: x_max must exceed x_min");
  if (nx < 8) throw DomainError("telegraph: nx must be >= 8");
  TelegraphGrid g;
  g.dim = dim;
  g.nx = nx;
  g.x_min = x_min;
  g.dx = (x_max - x_min) / nx;
  return g;
}

TelegraphGrid TelegraphGrid::centred(int dim, double half_width, double dx_target) {
  if (!(half_width > 0.0 && dx_target > 0.0)) {
    throw DomainError("telegraph: half_width and dx must be > 0");
  }
  int nx = static_cast<int>(std::ceil(2.0 * half_width / dx_target));
  if (nx % 2 == 0) ++nx;
  return make(dim, -0.5 * nx * dx_target, 0.5 * nx * dx_target, nx);
}

std::size_t TelegraphGrid::size() const {
  const auto n = static_cast<std::size_t>(nx);
  return dim == 1 ? n : n * n;
}

double max_dt(const TelegraphGrid& grid, double tau, double cfl) {
  if (!(tau > 0.0)) throw DomainError("tau must be > 0");
  if (!(cfl > 0.0 && cfl <= kMaxCfl)) throw DomainError("telegraph: cfl must lie in (0, 0.5]");
  return cfl * grid.dx * std::sqrt(tau);
}

TelegraphState make_state(const TelegraphGrid& grid, std::span<const double> rho0, double tau) {
  if (!(tau > 0.0)) throw DomainError("tau must be > 0");
  if (rho0.size() != grid.size()) throw DomainError("telegraph: rho0 size does not match the grid");
  TelegraphState s;
  s.rho.assign(rho0.begin(), rho0.end());
  s.w.assign(rho0.size(), 0.0);
  s.tau = tau;
  return s;
}

TelegraphState make_state(const TelegraphGrid& grid, std::span<const double> rho0,
                          std::span<const double> w0, double tau) {
  if (w0.size() != rho0.size()) throw DomainError("telegraph: w0 size does not match rho0");
  TelegraphState s = make_state(grid, rho0, tau);
  s.w.assign(w0.begin(), w0.end());
  return s;
}

void step(TelegraphState& s, const TelegraphGrid& grid, double dt, const TelegraphOptions& o) {
  if (s.rho.size() != grid.size() || s.w.size() != grid.size()) {
    throw SimulationError("telegraph: state size does not match the grid");
  }
  if (!(dt > 0.0) || dt > kMaxCfl * grid.dx * std::sqrt(s.tau) * (1.0 + 1e-12)) {
    throw SimulationError("telegraph: CFL violation (dt = " + format_double(dt) + ")");
  }
  thread_local std::vector<double> lap;
  const double tau = s.tau;
  const double h = 0.5 * dt / tau;
  const std::size_t n = s.rho.size();

  laplacian(s.rho, grid, lap);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = s.rho[k];
    s.w[k] += h * (lap[k] + reaction_of(r, o) - damping_of(r, tau, o) * s.w[k]);
    s.rho[k] += dt * s.w[k];
  }
  laplacian(s.rho, grid, lap);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = s.rho[k];
    s.w[k] = (s.w[k] + h * (lap[k] + reaction_of(r, o))) / (1.0 + h * damping_of(r, tau, o));
    if (!std::isfinite(s.w[k]) || !std::isfinite(r)) {
      throw SimulationError("telegraph: non-finite value at t = " + format_double(s.t));
    }
  }
  s.t += dt;
}

double wave_energy(const TelegraphState& s, const TelegraphGrid& g) {
  const double vol = g.dim == 1 ? g.dx : g.dx * g.dx;
  double kinetic = 0.0;
  for (double w : s.w) kinetic += w * w;
  double grad = 0.0;
  const int n = g.nx;
  if (g.dim == 1) {
    for (int i = 0; i + 1 < n; ++i) grad += std::pow((s.rho[i + 1] - s.rho[i]) / g.dx, 2);
  } else {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * n + i;
        if (i + 1 < n) grad += std::pow((s.rho[k + 1] - s.rho[k]) / g.dx, 2);
        if (j + 1 < n) grad += std::pow((s.rho[k + n] - s.rho[k]) / g.dx, 2);
      }
    }
  }
  return 0.5 * vol * (s.tau * kinetic + grad);
}

bool GaussianBump::in_proof_regime() const { return epsilon <= std::pow(delta, 1.25); }

void GaussianBump::validate() const {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw DomainError("bump: epsilon must lie in [0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("bump: delta must lie in (0, 1)");
}

double GaussianBump::operator()(double r2) const { return epsilon * std::exp(-r2 / delta); }

std::vector<double> sample_bump(const TelegraphGrid& grid, const GaussianBump& bump) {
  bump.validate();
  std::vector<double> out(grid.size());
  if (grid.dim == 1) {
    for (int i = 0; i < grid.nx; ++i) out[i] = bump(std::pow(grid.coord(i), 2));
    return out;
  }
  for (int j = 0; j < grid.nx; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.coord(i);
      out[static_cast<std::size_t>(j) * grid.nx + i] = bump(x * x + y * y);
    }
  }
  return out;
}

RunExtrema run(TelegraphState s, const TelegraphGrid& grid, double t_end, double cfl,
               const TelegraphOptions& options) {
  if (!(t_end >= 0.0)) throw DomainError("telegraph: t_end must be >= 0");
  const double dt_max = max_dt(grid, s.tau, cfl);
  RunExtrema out;
  auto record = [&] {
    const auto [lo, hi] = std::minmax_element(s.rho.begin(), s.rho.end());
    out.samples.push_back({s.t, *lo, *hi});
    if (out.samples.size() == 1 || *lo < out.min_rho) {
      out.min_rho = *lo;
      out.t_min = s.t;
    }
    out.max_rho = std::max(out.max_rho, *hi);
  };
  out.max_rho = -std::numeric_limits<double>::infinity();
  record();
  while (s.t < t_end - 1e-12 * std::max(1.0, t_end)) {
    step(s, grid, std::min(dt_max, t_end - s.t), options);
    record();
  }
  out.final_rho = std::move(s.rho);
  return out;
}

double scheme_error_estimate(const GaussianBump& bump, double tau, double t_end,
                             const SweepOptions& o) {
  const TelegraphGrid g1 = TelegraphGrid::centred(1, o.half_width, o.dx);
  TelegraphOptions linear;
  linear.reaction = false;
  const RunExtrema ref = run(make_state(g1, sample_bump(g1, bump), tau), g1, t_end, o.cfl, linear);
  return std::max(std::max(0.0, -ref.min_rho), 1e-14 * bump.epsilon);
}

NegativityReport negativity_run_2d(const GaussianBump& bump, double tau, double t_end,
                                   const SweepOptions& o) {
  bump.validate();
  const TelegraphGrid g2 = TelegraphGrid::centred(2, o.half_width, o.dx);
  NegativityReport rep;
  rep.epsilon = bump.epsilon;
  rep.delta = bump.delta;
  rep.dx = g2.dx;
  rep.in_proof_regime = bump.in_proof_regime();
  rep.error_estimate = scheme_error_estimate(bump, tau, t_end, o);
  rep.threshold = -10.0 * rep.error_estimate;
  RunExtrema ex = run(make_state(g2, sample_bump(g2, bump), tau), g2, t_end, o.cfl);
  rep.min_rho = ex.min_rho;
  rep.t_min = ex.t_min;
  int current = 0;
  for (const ExtremaSample& smp : ex.samples) {
    current = smp.min_rho < rep.threshold ? current + 1 : 0;
    rep.longest_run = std::max(rep.longest_run, current);
  }
  rep.negative = rep.longest_run >= o.persistence_steps;
  rep.samples = std::move(ex.samples);
  if (o.keep_final) rep.final_rho = std::move(ex.final_rho);
  return rep;
}

std::string SearchResult::summary() const {
  std::ostringstream os;
  if (!found()) {
    os << "no negativity in " << reports.size() << " runs";
    if (!reports.empty()) os << " at dx = " << format_double(reports.front().dx);
    return os.str();
  }
  const NegativityReport& r = reports[static_cast<std::size_t>(best)];
  os << "epsilon = " << format_double(r.epsilon) << ", delta = " << format_double(r.delta)
     << ", min_rho = " << format_double(r.min_rho) << " at t = " << format_double(r.t_min);
  return os.str();
}

SearchResult negativity_search_2d(double tau, std::span<const std::pair<double, double>> eps_delta,
                                  double t_end, const SweepOptions& options) {
  SearchResult res;
  for (const auto& [eps, delta] : eps_delta) {
    res.reports.push_back(negativity_run_2d(GaussianBump{eps, delta}, tau, t_end, options));
    const NegativityReport& r = res.reports.back();
    if (r.negative &&
        (res.best < 0 || r.min_rho < res.reports[static_cast<std::size_t>(res.best)].min_rho)) {
      res.best = static_cast<int>(res.reports.size()) - 1;
    }
  }
  return res;
}

std::vector<std::pair<double, double>> proof_regime_pairs(std::span<const double> deltas) {
  std::vector<std::pair<double, double>> out;
  for (double d : deltas) out.emplace_back(std::pow(d, 1.25), d);
  return out;
}

Stability resolution_check(const NegativityReport& witness, double tau, double t_end,
                           const SweepOptions& options) {
  SweepOptions fine = options;
  fine.dx = 0.5 * witness.dx;
  const NegativityReport r =
      negativity_run_2d(GaussianBump{witness.epsilon, witness.delta}, tau, t_end, fine);
  Stability st;
  st.min_coarse = witness.min_rho;
  st.min_fine = r.min_rho;
  st.stable = witness.min_rho < 0.0 && r.negative && r.min_rho <= 0.9 * witness.min_rho;
  return st;
}

BoundCheck bound_check_1d(std::span<const double> rho0, const TelegraphGrid& grid, double tau,
                          double t_end, double cfl, double tolerance_per_dx) {
  if (grid.dim != 1) throw DomainError("bound_check_1d: grid must be one-dimensional");
  for (double r : rho0) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("bound_check_1d: rho0 must lie in [0, 1]");
  }
  const RunExtrema ex = run(make_state(grid, rho0, tau), grid, t_end, cfl);
  BoundCheck bc;
  bc.min_rho = ex.min_rho;
  bc.max_rho = ex.max_rho;

  std::vector<double> w0(rho0.size());
  for (std::size_t i = 0; i < w0.size(); ++i) w0[i] = rho0[i] * (1.0 - rho0[i]);
  const RunExtrema matched = run(make_state(grid, rho0, w0, tau), grid, t_end, cfl);
  const auto kgrid = kinetic1d::Grid1D::make(grid.x_min, grid.x_min + grid.nx * grid.dx, grid.nx,
                                             1.0, kinetic1d::transport_speed(tau));
  const kinetic1d::TelegraphRun kin = kinetic1d::telegraph_via_kinetic(rho0, kgrid, tau, t_end);
  for (std::size_t i = 0; i < kin.rho.size(); ++i) {
    bc.kinetic_linf_diff = std::max(bc.kinetic_linf_diff, std::abs(kin.rho[i] - matched.final_rho[i]));
  }
  bc.kinetic_tolerance = tolerance_per_dx * grid.dx;
  if (bc.kinetic_linf_diff > bc.kinetic_tolerance) {
    throw SimulationError("bound_check_1d: telegraph and kinetic solvers differ by " +
                          format_double(bc.kinetic_linf_diff) + " > " +
                          format_double(bc.kinetic_tolerance));
  }
  return bc;
}

}  // namespace kinfront::telegraph
