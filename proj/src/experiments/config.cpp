#include "kinfront/experiments/config.hpp"

#include <cmath>

#include "kinfront/format.hpp"

namespace kinfront::experiments {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void check_tau(double tau, const std::string& what = "--tau") {
  require(finite_positive(tau), what + " must be a finite number > 0 (got " + format_double(tau) + ")");
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["n"] = n;
  j["tau"] = tau;
  j["tau_grid"] = tau_grid;
  j["epsilon"] = epsilon;
  j["delta"] = delta;
  j["dim"] = dim;
  j["nx"] = nx;
  j["cfl"] = cfl;
  j["t_end"] = t_end;
  j["half_width"] = half_width;
  j["s"] = s_values;
  j["mu"] = mu;
  j["mc_samples"] = mc_samples;
  j["pmin"] = pmin;
  j["pmax"] = pmax;
  j["steps"] = steps;
  j["p"] = p_values;
  j["nonlinearity"] = nonlinearity;
  j["reaction"] = reaction;
  j["sweep"] = sweep;
  j["sweep_deltas"] = sweep_deltas;
  j["cells_per_delta"] = cells_per_delta;
  j["profiles"] = profiles;
  j["snapshots"] = snapshots;
  j["quick"] = quick;
  j["out"] = out_dir;
  j["emit"] = emit;
  j["seed"] = seed;
  return j;
}

void validate(ExperimentConfig& c) {
  require(!c.out_dir.empty(), "--out must not be empty");
  require(c.emit == "csv" || c.emit == "json", "--emit must be csv or json");
  const std::string& cmd = c.command;

  if (cmd == "integrals") {
    require(c.n >= 1, "--n must be >= 1");
    require(finite_positive(c.mu), "--mu must be > 0");
    if (c.s_values.empty()) c.s_values = {1.0, 1.1, 2.0, 5.0, 50.0};
    for (double s : c.s_values) require(std::isfinite(s) && s >= 1.0, "--s values must be >= 1");
    require(c.mc_samples >= 1000 && c.mc_samples <= 100000000, "--mc-samples must lie in [1e3, 1e8]");
    return;
  }
  if (cmd == "hamiltonian") {
    require(c.n >= 1, "--n must be >= 1");
    check_tau(c.tau);
    require(std::isfinite(c.pmin) && c.pmin >= 0.0, "--pmin must be >= 0");
    require(std::isfinite(c.pmax) && c.pmax >= c.pmin, "--pmax must be >= --pmin");
    require(c.steps >= 1 && c.steps <= 1000000, "--steps must lie in [1, 1e6]");
    return;
  }
  if (cmd == "speed") {
    require(c.n >= 1, "--n must be >= 1");
    if (c.tau_grid.empty()) c.tau_grid = {c.tau};
    for (double t : c.tau_grid) check_tau(t, "--tau-grid");
    return;
  }
  if (cmd == "hydro-limit") {
    require(c.n >= 1, "--n must be >= 1");
    if (c.p_values.empty()) c.p_values = {0.5, 1.0, 2.0};
    for (double p : c.p_values) require(std::isfinite(p) && p >= 0.0, "--p values must be >= 0");
    if (c.tau_grid.empty()) c.tau_grid = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    for (double t : c.tau_grid) check_tau(t, "--tau-grid");
    return;
  }
  if (cmd == "simulate-1d") {
    check_tau(c.tau);
    if (c.epsilon < 0.0) c.epsilon = 1.0;
    require(c.epsilon > 0.0 && c.epsilon <= 1.0, "--epsilon must lie in (0, 1]");
    if (c.nx == 0) c.nx = 4000;
    require(c.nx >= 8 && c.nx <= 20000000, "--nx must lie in [8, 2e7]");
    if (c.cfl == 0.0) c.cfl = 1.0;
    require(c.cfl > 0.0 && c.cfl <= 1.0, "--cfl must lie in (0, 1]");
    if (c.t_end == 0.0) c.t_end = 40.0;
    require(finite_positive(c.t_end), "--t-end must be > 0");
    require(c.nonlinearity == "logistic" || c.nonlinearity == "logistic-plus",
            "--nonlinearity must be logistic or logistic-plus");
    require(c.profiles >= 0 && c.profiles <= 1000, "--profiles must lie in [0, 1000]");
    return;
  }
  if (cmd == "simulate-2d-discrete") {
    check_tau(c.tau);
    require(c.tau > 4.0, "--tau must exceed 4 for the cone experiment");
    require(finite_positive(c.delta), "--delta must be > 0");
    if (c.t_end == 0.0) c.t_end = 1.0;
    require(finite_positive(c.t_end), "--t-end must be > 0");
    require(c.cells_per_delta >= 1 && c.cells_per_delta <= 10000, "--cells-per-delta must lie in [1, 1e4]");
    require(c.nx >= 0 && c.nx <= 20001, "--nx must lie in [0, 20001]");
    require(c.reaction == "local" || c.reaction == "logistic" || c.reaction == "nonlocal-plus" ||
                c.reaction == "logistic-plus" || c.reaction == "per-velocity",
            "--reaction must be local, nonlocal-plus, logistic, logistic-plus or per-velocity");
    return;
  }
  if (cmd == "simulate-telegraph") {
    check_tau(c.tau);
    require(c.dim == 1 || c.dim == 2, "--dim must be 1 or 2");
    if (c.cfl == 0.0) c.cfl = 0.5;
    require(c.cfl > 0.0 && c.cfl <= 0.5, "--cfl must lie in (0, 0.5]");
    require(finite_positive(c.delta) && c.delta < 1.0, "--delta must lie in (0, 1)");
    if (c.sweep && c.sweep_deltas.empty()) c.sweep_deltas = {0.05, 0.1, 0.2};
    for (double d : c.sweep_deltas) require(d > 0.0 && d < 1.0, "sweep deltas must lie in (0, 1)");
    if (c.epsilon < 0.0) c.epsilon = std::pow(c.delta, 1.25);
    require(c.epsilon >= 0.0 && c.epsilon < 1.0, "--epsilon must lie in [0, 1)");
    if (c.dim == 1) {
      if (c.half_width == 0.0) c.half_width = 30.0;
      if (c.nx == 0) c.nx = 3000;
      if (c.t_end == 0.0) c.t_end = 10.0;
    } else {
      if (c.half_width == 0.0) c.half_width = 3.5;
      if (c.nx == 0) c.nx = 351;
      if (c.t_end == 0.0) {
        double dmax = c.delta;
        for (double d : c.sweep_deltas) dmax = std::max(dmax, d);
        c.t_end = 3.0 * std::sqrt(dmax * c.tau);
      }
    }
    require(finite_positive(c.half_width), "--half-width must be > 0");
    require(c.nx >= 9 && c.nx <= (c.dim == 1 ? 20000000 : 8001), "--nx out of range");
    require(finite_positive(c.t_end), "--t-end must be > 0");
    return;
  }
  if (cmd == "reproduce-all") return;
  throw ConfigError("unknown subcommand '" + cmd + "'");
}

}  // namespace kinfront::experiments
