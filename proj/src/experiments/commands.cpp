#include "kinfront/experiments/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "kinfront/discrete_kinetic2d.hpp"
#include "kinfront/errors.hpp"
#include "kinfront/experiments/acceptance.hpp"
#include "kinfront/experiments/csv.hpp"
#include "kinfront/format.hpp"
#include "kinfront/front_speed.hpp"
#include "kinfront/hamiltonian.hpp"
#include "kinfront/kinetic1d.hpp"
#include "kinfront/numerics.hpp"
#include "kinfront/sphere_integrals.hpp"
#include "kinfront/telegraph.hpp"

namespace kinfront::experiments {

namespace {

namespace fs = std::filesystem;

struct Run {
  const ExperimentConfig& cfg;
  RunManifest& manifest;
  std::ostream& log;

  CsvWriter csv(const std::string& file, const std::string& schema,
                const std::vector<std::string>& columns,
                const std::vector<std::string>& comments = {}) {
    manifest.outputs.push_back(file);
    return CsvWriter(fs::path(cfg.out_dir) / file, schema, 1, columns, comments);
  }
  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    manifest.add_check(name, ok, detail);
  }
};

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

void cmd_integrals(Run& r) {
  const ExperimentConfig& c = r.cfg;
  const SphereDim dim(c.n);
  CsvWriter w = r.csv("integrals.csv", "integrals", {"n", "s", "mu", "value", "method"});
  double worst = 0.0;
  bool compared = false;
  for (double s : c.s_values) {
    if (c.mu == 1.0) {
      const PhiEval e = phi(dim, s);
      w.row({c.n, s, c.mu, e.value.to_double(), to_string(e.method)});
      if ((c.n == 2 || c.n == 3) && s > 1.0) {
        worst = std::max(worst, std::abs(e.value.value() - phi_quadrature(dim, s)));
        compared = true;
      }
    } else {
      const ExtendedReal v = phi_power(dim, s, c.mu);
      w.row({c.n, s, c.mu, v.to_double(), c.n == 1 ? "two_point_sum" : "quadrature"});
    }
  }
  w.close();
  if (compared) r.check("closed form vs quadrature within 1e-9", worst <= 1e-9, format_double(worst));

  std::vector<double> unit(static_cast<std::size_t>(c.n), 0.0);
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double norm = 0.0;
  for (double& x : unit) {
    x = gauss(rng);
    norm += x * x;
  }
  for (double& x : unit) x /= std::sqrt(norm);
  const double rec = second_moment(dim, unit);
  const MonteCarloMoment mc = monte_carlo_second_moment(unit, c.mc_samples, c.seed + 1);
  CsvWriter m = r.csv("second_moment.csv", "second_moment",
                      {"n", "recurrence", "mc_mean", "mc_sigma", "mc_samples", "seed"});
  m.row({c.n, rec, mc.mean, mc.sigma, c.mc_samples, std::to_string(c.seed)});
  m.close();
  r.check("second moment = 1 (recurrence)", std::abs(rec - 1.0) <= 1e-10, format_double(rec));
  r.check("second moment vs Monte-Carlo within 3 sigma",
          std::abs(mc.mean - rec) <= 3.0 * mc.sigma + 1e-15,
          format_double(mc.mean) + " +- " + format_double(mc.sigma));
}

void cmd_hamiltonian(Run& r) {
  const ExperimentConfig& c = r.cfg;
  const ModelParams mp = ModelParams::make(c.n, c.tau);
  CsvWriter w = r.csv("hamiltonian.csv", "hamiltonian", {"p_norm", "H", "branch", "residual"});
  double worst = 0.0;
  double worst_residual = 0.0;
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < c.steps; ++k) {
    const double p = c.steps == 1 ? c.pmin : c.pmin + (c.pmax - c.pmin) * k / (c.steps - 1);
    const HamiltonianEval e = hamiltonian_radial(mp, p);
    w.row({p, e.value, to_string(e.branch), e.residual});
    if (e.branch == HamiltonianBranch::implicit_branch) {
      worst_residual = std::max(worst_residual, e.residual);
    }
    if (c.n <= 3) worst = std::max(worst, std::abs(e.value - hamiltonian_implicit(mp, p).value));
    if (e.value > prev + 1e-12) monotone = false;
    prev = e.value;
  }
  w.close();
  r.check("H(0) = -1", std::abs(hamiltonian_radial(mp, 0.0).value + 1.0) <= 1e-12);
  if (c.n <= 3) r.check("closed form vs implicit root within 1e-8", worst <= 1e-8, format_double(worst));
  r.check("implicit residuals <= 1e-12", worst_residual <= 1e-12, format_double(worst_residual));
  r.check("H radially non-increasing on the grid", monotone);
}

void cmd_speed(Run& r) {
  const ExperimentConfig& c = r.cfg;
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::pair<double, SpeedResult>> results;
  for (double tau : c.tau_grid) {
    const SpeedResult s = speed(ModelParams::make(c.n, tau));
    results.emplace_back(tau, s);
    rows.push_back({{"n", c.n},
                    {"tau", tau},
                    {"c", s.c},
                    {"a", s.a},
                    {"p_star", json_number(s.p_star.to_double())},
                    {"is_hyperbolic", s.is_hyperbolic}});
    r.check("tau=" + format_double(tau) + ": 0 < c <= a", s.c > 0.0 && s.c <= s.a * (1.0 + 1e-12));
    if (c.n == 1) {
      const double exact = tau <= 1.0 ? 2.0 / (1.0 + tau) : 1.0 / std::sqrt(tau);
      r.check("tau=" + format_double(tau) + ": c matches the 1-D closed form",
              std::abs(s.c - exact) <= 1e-8, format_double(s.c - exact));
      r.check("tau=" + format_double(tau) + ": hyperbolic iff tau >= 1",
              s.is_hyperbolic == (tau >= 1.0));
    } else {
      r.check("tau=" + format_double(tau) + ": not hyperbolic", !s.is_hyperbolic);
      if (c.n == 2) {
        const double exact = std::sqrt(2.0 * (2.0 + tau)) / (1.0 + tau);
        r.check("tau=" + format_double(tau) + ": c matches the 2-D closed form",
                std::abs(s.c - exact) <= 1e-8, format_double(s.c - exact));
      }
    }
  }
  r.manifest.results["speeds"] = rows;
  if (c.emit == "json") {
    r.manifest.outputs.push_back("speed.json");
    std::ofstream out(fs::path(c.out_dir) / "speed.json");
    out << rows.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing speed.json");
    return;
  }
  CsvWriter w = r.csv("speed.csv", "speed", {"n", "tau", "c", "a", "p_star", "is_hyperbolic"});
  for (const auto& [tau, s] : results) {
    w.row({c.n, tau, s.c, s.a, s.p_star.to_double(), s.is_hyperbolic});
  }
  w.close();
}

void cmd_hydro(Run& r) {
  const ExperimentConfig& c = r.cfg;
  CsvWriter w = r.csv("hydro_limit.csv", "hydro_limit", {"n", "p", "tau", "residual"});
  for (double p : c.p_values) {
    std::vector<double> pv(static_cast<std::size_t>(c.n), 0.0);
    pv[0] = p;
    const std::vector<double> res = hydro_limit_residual(SphereDim(c.n), pv, c.tau_grid);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < res.size(); ++i) {
      w.row({c.n, p, c.tau_grid[i], res[i]});
      if (res[i] > 0.0) {
        lx.push_back(std::log(c.tau_grid[i]));
        ly.push_back(std::log(res[i]));
      }
    }
    if (p == 0.0) {
      r.check("p=0: residual vanishes",
              *std::max_element(res.begin(), res.end()) <= 1e-12);
    } else if (lx.size() >= 2) {
      const numerics::LineFit fit = numerics::fit_line(lx.data(), ly.data(), lx.size());
      r.check("p=" + format_double(p) + ": residual order >= 0.9", fit.slope >= 0.9,
              "order " + format_double(fit.slope));
    }
  }
  w.close();
}

void write_profile(Run& r, const kinetic1d::KineticState1D& s, const kinetic1d::Grid1D& g) {
  CsvWriter w = r.csv("profile_" + short_num(s.t) + ".csv", "profile_1d",
                      {"x", "p_plus", "p_minus", "rho"}, {"t=" + format_double(s.t)});
  for (int i = 0; i < g.nx; ++i) w.row({g.x(i), s.p_plus[i], s.p_minus[i], s.rho(i)});
  w.close();
}

void cmd_simulate_1d(Run& r) {
  const ExperimentConfig& c = r.cfg;
  const double a = kinetic1d::transport_speed(c.tau);
  const double x_min = -10.0;
  const auto grid = kinetic1d::Grid1D::make(x_min, a * c.t_end + 20.0, c.nx, c.cfl, a);
  kinetic1d::TrackOptions opts;
  opts.nonlinearity = c.nonlinearity == "logistic" ? kinetic1d::Nonlinearity::logistic
                                                   : kinetic1d::Nonlinearity::logistic_plus;
  opts.steps_per_sample = std::max(1, static_cast<int>(std::lround(0.1 / grid.dt)));
  int next_profile = 1;
  opts.on_sample = [&](const kinetic1d::KineticState1D& s) {
    if (c.profiles == 0) return;
    if (s.t == 0.0 || s.t + 1e-9 >= next_profile * c.t_end / c.profiles) {
      write_profile(r, s, grid);
      if (s.t > 0.0) ++next_profile;
    }
  };
  const kinetic1d::FrontTrace tr = kinetic1d::run_and_track(
      kinetic1d::indicator_state(grid, x_min, 0.0, c.tau, c.epsilon), grid, c.t_end, opts);

  CsvWriter w = r.csv("front.csv", "front_1d", {"t", "front_pos", "support_edge"});
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    w.row({tr.times[i], tr.positions[i], tr.support_edges[i]});
  }
  w.close();

  const double c_exact = c.tau <= 1.0 ? 2.0 / (1.0 + c.tau) : 1.0 / std::sqrt(c.tau);
  const double bound = kinetic1d::upper_bound(c.tau);
  r.manifest.results = {{"fitted_speed", tr.fitted_speed},
                        {"fit_residual", tr.fit_residual},
                        {"c_expected", c_exact},
                        {"min_field", tr.extrema.min_field},
                        {"max_field", tr.extrema.max_field},
                        {"M_tau", bound}};
  r.check("fields >= -1e-12", tr.extrema.min_field >= -1e-12, format_double(tr.extrema.min_field));
  r.check("fields <= M_tau (1 + 1e-6)", tr.extrema.max_field <= bound * (1.0 + 1e-6),
          format_double(tr.extrema.max_field));
  r.check("fitted speed within 5% of c", std::abs(tr.fitted_speed - c_exact) <= 0.05 * c_exact,
          format_double(tr.fitted_speed) + " vs " + format_double(c_exact));
}

void cmd_simulate_2d(Run& r) {
  const ExperimentConfig& c = r.cfg;
  discrete2d::ProbeOptions opts;
  opts.reaction = discrete2d::reaction_from_string(c.reaction);
  opts.cells_per_delta = c.cells_per_delta;
  if (c.nx > 0) {
    const double a = discrete2d::transport_speed(c.tau);
    opts.cells_per_delta = 1;
    while (discrete2d::Grid2D::for_probe(c.delta, opts.cells_per_delta, c.t_end, a).nx < c.nx) {
      ++opts.cells_per_delta;
    }
  }
  if (c.snapshots) {
    opts.on_final = [&](const discrete2d::DiscreteKineticState2D& s, const discrete2d::Grid2D& g) {
      CsvWriter w = r.csv("snapshot.csv", "snapshot_2d_discrete",
                          {"x1", "x2", "p_e1", "p_e2", "p_me1", "p_me2", "rho"},
                          {"nx=" + std::to_string(g.nx) + ", ny=" + std::to_string(g.nx) +
                           ", dx=" + format_double(g.dx) + ", t=" + format_double(s.t)});
      for (int j = 0; j < g.nx; ++j) {
        for (int i = 0; i < g.nx; ++i) {
          const std::size_t k = g.index(i, j);
          w.row({g.coord(i), g.coord(j), s.p_e1[k], s.p_e2[k], s.p_me1[k], s.p_me2[k], s.rho(k)});
        }
      }
      w.close();
    };
  }
  const discrete2d::ProbeResult res = discrete2d::negativity_probe(c.tau, c.delta, c.t_end, opts);
  CsvWriter w = r.csv("probe.csv", "probe_2d_discrete",
                      {"t", "p_e2_at_probe", "rho_at_probe", "global_min"},
                      {"dx=" + format_double(res.dx) + ", reaction=" + to_string(opts.reaction)});
  for (const auto& s : res.samples) w.row({s.t, s.p_e2_at_probe, s.rho_at_probe, s.global_min});
  w.close();
  r.manifest.results = {{"min_value", res.min_value},
                        {"min_t", res.min_t},
                        {"min_x2", res.min_x2},
                        {"field_min_e2", res.field_min_e2},
                        {"global_min", res.global_min},
                        {"max_overlap_rho", res.max_overlap_rho},
                        {"overlap_target", res.overlap_target},
                        {"longest_negative_run", res.longest_negative_run},
                        {"cells_per_delta", opts.cells_per_delta},
                        {"dx", res.dx},
                        {"status", to_string(res.status)}};
  if (opts.reaction == discrete2d::Reaction2D::logistic) {
    r.check("probe value negative for >= 10 consecutive steps",
            res.status == discrete2d::ProbeStatus::negative,
            to_string(res.status) + ", min " + format_double(res.min_value));
  } else {
    r.check("all fields >= -1e-12", res.global_min >= -1e-12, format_double(res.global_min));
  }
}

void write_extrema(Run& r, const std::string& file, const std::vector<telegraph::ExtremaSample>& xs,
                   const std::string& comment) {
  CsvWriter w = r.csv(file, "telegraph_extrema", {"t", "min_rho", "max_rho"}, {comment});
  for (const auto& s : xs) w.row({s.t, s.min_rho, s.max_rho});
  w.close();
}

void cmd_simulate_telegraph(Run& r) {
  const ExperimentConfig& c = r.cfg;
  std::vector<std::pair<double, double>> pairs;
  if (c.sweep) {
    pairs = telegraph::proof_regime_pairs(c.sweep_deltas);
  } else {
    pairs = {{c.epsilon, c.delta}};
  }
  auto name_for = [&](std::size_t k, const std::string& stem) {
    return pairs.size() == 1 ? stem + ".csv" : stem + "_" + std::to_string(k) + ".csv";
  };

  if (c.dim == 1) {
    const auto grid = telegraph::TelegraphGrid::make(1, -c.half_width, c.half_width, c.nx);
    double lo = 0.0;
    double hi = 0.0;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const telegraph::GaussianBump bump{pairs[k].first, pairs[k].second};
      const std::vector<double> rho0 = telegraph::sample_bump(grid, bump);
      const telegraph::BoundCheck bc = telegraph::bound_check_1d(rho0, grid, c.tau, c.t_end, c.cfl);
      const telegraph::RunExtrema ex =
          telegraph::run(telegraph::make_state(grid, rho0, c.tau), grid, c.t_end, c.cfl);
      write_extrema(r, name_for(k, "extrema"), ex.samples,
                    "epsilon=" + format_double(bump.epsilon) + ", delta=" + format_double(bump.delta));
      if (c.snapshots) {
        CsvWriter w = r.csv(name_for(k, "snapshot"), "telegraph_snapshot_1d", {"x", "rho"},
                            {"t=" + format_double(c.t_end)});
        for (int i = 0; i < grid.nx; ++i) w.row({grid.coord(i), ex.final_rho[i]});
        w.close();
      }
      lo = std::min(lo, bc.min_rho);
      hi = std::max(hi, bc.max_rho);
      rows.push_back({{"epsilon", bump.epsilon},
                      {"delta", bump.delta},
                      {"min_rho", bc.min_rho},
                      {"max_rho", bc.max_rho},
                      {"kinetic_linf_diff", bc.kinetic_linf_diff}});
    }
    r.manifest.results["runs"] = rows;
    r.check("rho stays in [-1e-6, 2 + 1e-6]", lo >= -1e-6 && hi <= 2.0 + 1e-6,
            "min " + format_double(lo) + ", max " + format_double(hi));
    return;
  }

  telegraph::SweepOptions so;
  so.half_width = c.half_width;
  so.dx = 2.0 * c.half_width / c.nx;
  so.cfl = c.cfl;
  so.keep_final = c.snapshots;
  const telegraph::SearchResult sr = telegraph::negativity_search_2d(c.tau, pairs, c.t_end, so);
  CsvWriter sw = r.csv("sweep.csv", "telegraph_sweep",
                       {"epsilon", "delta", "dx", "min_rho", "t_min", "error_estimate", "threshold",
                        "longest_run", "negative", "in_proof_regime"});
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < sr.reports.size(); ++k) {
    const telegraph::NegativityReport& rep = sr.reports[k];
    sw.row({rep.epsilon, rep.delta, rep.dx, rep.min_rho, rep.t_min, rep.error_estimate,
            rep.threshold, rep.longest_run, rep.negative, rep.in_proof_regime});
    write_extrema(r, name_for(k, "extrema"), rep.samples,
                  "epsilon=" + format_double(rep.epsilon) + ", delta=" + format_double(rep.delta));
    if (c.snapshots) {
      const auto g = telegraph::TelegraphGrid::centred(2, so.half_width, so.dx);
      CsvWriter w = r.csv(name_for(k, "snapshot"), "telegraph_snapshot_2d", {"x1", "x2", "rho"},
                          {"nx=" + std::to_string(g.nx) + ", ny=" + std::to_string(g.nx) +
                           ", dx=" + format_double(g.dx) + ", t=" + format_double(c.t_end)});
      for (int j = 0; j < g.nx; ++j) {
        for (int i = 0; i < g.nx; ++i) {
          w.row({g.coord(i), g.coord(j), rep.final_rho[static_cast<std::size_t>(j) * g.nx + i]});
        }
      }
      w.close();
    }
    if (!rep.in_proof_regime) {
      r.log << "warning: epsilon > delta^(5/4) for pair " << k << '\n';
    }
    rows.push_back({{"epsilon", rep.epsilon},
                    {"delta", rep.delta},
                    {"min_rho", rep.min_rho},
                    {"t_min", rep.t_min},
                    {"negative", rep.negative}});
  }
  sw.close();
  r.manifest.results["runs"] = rows;
  r.manifest.results["summary"] = sr.summary();
  r.check("negativity found (threshold rule)", sr.found(), sr.summary());
  if (sr.found()) {
    const telegraph::Stability st = telegraph::resolution_check(
        sr.reports[static_cast<std::size_t>(sr.best)], c.tau, c.t_end, so);
    r.manifest.results["min_rho_half_dx"] = st.min_fine;
    r.check("witness resolution-stable at dx/2", st.stable,
            format_double(st.min_coarse) + " -> " + format_double(st.min_fine));
  }
}

void cmd_reproduce_all(Run& r) {
  AcceptanceOptions opts;
  opts.quick = r.cfg.quick;
  opts.out_dir = r.cfg.out_dir;
  opts.seed = r.cfg.seed;
  opts.on_result = [&](const CriterionResult& cr) {
    r.log << summary_line(cr) << '\n' << failure_details(cr) << std::flush;
  };
  const std::vector<CriterionResult> results = run_acceptance(opts);
  nlohmann::json table = nlohmann::json::array();
  for (const CriterionResult& cr : results) {
    std::string detail;
    for (const Check& ch : cr.checks) {
      if (!ch.passed) detail += ch.name + ": " + ch.detail + "; ";
    }
    r.check("criterion " + std::to_string(cr.id) + ": " + cr.title, cr.passed,
            cr.skipped ? "skipped (--quick)" : detail);
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& ch : cr.checks) {
      checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    }
    table.push_back({{"id", cr.id},
                     {"title", cr.title},
                     {"passed", cr.passed},
                     {"skipped", cr.skipped},
                     {"seconds", cr.seconds},
                     {"checks", checks}});
    for (const std::string& f : cr.outputs) r.manifest.outputs.push_back(f);
  }
  r.manifest.results["criteria"] = table;
}

void add_common(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "Seed for Monte-Carlo checks")->capture_default_str();
}

}  // namespace

int run(const ExperimentConfig& cfg, std::ostream& log) {
  RunManifest manifest;
  manifest.command = cfg.command;
  manifest.config = cfg.to_json();
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    fs::create_directories(cfg.out_dir);
    Run r{cfg, manifest, log};
    if (cfg.command == "integrals") {
      cmd_integrals(r);
    } else if (cfg.command == "hamiltonian") {
      cmd_hamiltonian(r);
    } else if (cfg.command == "speed") {
      cmd_speed(r);
    } else if (cfg.command == "hydro-limit") {
      cmd_hydro(r);
    } else if (cfg.command == "simulate-1d") {
      cmd_simulate_1d(r);
    } else if (cfg.command == "simulate-2d-discrete") {
      cmd_simulate_2d(r);
    } else if (cfg.command == "simulate-telegraph") {
      cmd_simulate_telegraph(r);
    } else if (cfg.command == "reproduce-all") {
      cmd_reproduce_all(r);
    } else {
      throw ConfigError("unknown subcommand '" + cfg.command + "'");
    }
    manifest.status = manifest.all_passed() ? RunStatus::ok : RunStatus::checks_failed;
    code = manifest.all_passed() ? kExitOk : kExitChecks;
  } catch (const std::exception& e) {
    manifest.status = RunStatus::runtime_error;
    manifest.failure = e.what();
    log << "error: " << e.what() << '\n';
    code = kExitRuntime;
  }
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_manifest_atomic(manifest, cfg.out_dir);
  } catch (const std::exception& e) {
    log << "error: could not write manifest: " << e.what() << '\n';
    return kExitRuntime;
  }
  for (const Check& ch : manifest.checks) {
    if (!ch.passed) log << "check failed: " << ch.name << (ch.detail.empty() ? "" : ": ") << ch.detail << '\n';
  }
  log << cfg.command << ": " << to_string(manifest.status) << " ("
      << manifest.checks.size() << " checks), outputs in " << cfg.out_dir << '\n';
  return code;
}

int cli_main(int argc, char** argv) {
  ExperimentConfig cfg;
  CLI::App app{"Fronts, Hamiltonians and positivity experiments for reactive-kinetic models",
               "kinfront"};
  app.set_config("--config", "", "TOML config file; keys are long flag names, [subcommand] sections");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.set_version_flag("--version", kArtifactVersion);

  auto* integrals = app.add_subcommand("integrals", "Sphere averages Phi(s) and the second moment");
  integrals->add_option("--n", cfg.n, "Dimension")->capture_default_str();
  integrals->add_option("--s", cfg.s_values, "Arguments s >= 1");
  integrals->add_option("--mu", cfg.mu, "Power mu > 0")->capture_default_str();
  integrals->add_option("--mc-samples", cfg.mc_samples, "Monte-Carlo samples")->capture_default_str();

  auto* ham = app.add_subcommand("hamiltonian", "Tabulate H(p) along a ray");
  ham->add_option("--n", cfg.n)->capture_default_str();
  ham->add_option("--tau", cfg.tau)->capture_default_str();
  ham->add_option("--pmin", cfg.pmin)->capture_default_str();
  ham->add_option("--pmax", cfg.pmax)->capture_default_str();
  ham->add_option("--steps", cfg.steps)->capture_default_str();

  auto* spd = app.add_subcommand("speed", "Front speed c and transport speed a");
  spd->add_option("--n", cfg.n)->capture_default_str();
  auto* tau_opt = spd->add_option("--tau", cfg.tau)->capture_default_str();
  spd->add_option("--tau-grid", cfg.tau_grid, "List of tau values")->excludes(tau_opt);
  spd->add_option("--emit", cfg.emit, "csv or json")->capture_default_str();

  auto* hydro = app.add_subcommand("hydro-limit", "|H(p) + |p|^2 + 1| as tau -> 0");
  hydro->add_option("--n", cfg.n)->capture_default_str();
  hydro->add_option("--p", cfg.p_values, "Values of |p|");
  hydro->add_option("--tau-grid", cfg.tau_grid, "List of tau values");

  auto* sim1 = app.add_subcommand("simulate-1d", "Two-speed kinetic front from indicator data");
  sim1->add_option("--tau", cfg.tau)->capture_default_str();
  sim1->add_option("--epsilon", cfg.epsilon, "Hyperbolic scaling parameter (default 1)");
  sim1->add_option("--nx", cfg.nx, "Cells (default 4000)");
  sim1->add_option("--cfl", cfg.cfl, "CFL number (default 1)");
  sim1->add_option("--t-end", cfg.t_end, "Final time (default 40)");
  sim1->add_option("--nonlinearity", cfg.nonlinearity, "logistic or logistic-plus")->capture_default_str();
  sim1->add_option("--profiles", cfg.profiles, "Profile snapshots")->capture_default_str();

  auto* sim2 = app.add_subcommand("simulate-2d-discrete", "Four-velocity cone experiment");
  sim2->add_option("--tau", cfg.tau, "Relaxation time (> 4)");
  sim2->add_option("--delta", cfg.delta, "Probe offset")->capture_default_str();
  sim2->add_option("--nx", cfg.nx, "Minimum cells per side (overrides --cells-per-delta)");
  sim2->add_option("--cells-per-delta", cfg.cells_per_delta)->capture_default_str();
  sim2->add_option("--t-end", cfg.t_end, "Final time (default 1)");
  sim2->add_option("--reaction", cfg.reaction, "local, nonlocal-plus, logistic, logistic-plus, per-velocity")
      ->capture_default_str();
  sim2->add_flag("--snapshots", cfg.snapshots, "Write the final fields");

  auto* tel = app.add_subcommand("simulate-telegraph", "Reactive-telegraph runs from a Gaussian bump");
  tel->add_option("--dim", cfg.dim)->capture_default_str();
  tel->add_option("--tau", cfg.tau)->capture_default_str();
  tel->add_option("--epsilon", cfg.epsilon, "Amplitude (default delta^(5/4))");
  tel->add_option("--delta", cfg.delta)->capture_default_str();
  tel->add_flag("--sweep", cfg.sweep, "Sweep delta with epsilon = delta^(5/4)");
  tel->add_option("--sweep-deltas", cfg.sweep_deltas, "Deltas for --sweep (default 0.05 0.1 0.2)");
  tel->add_option("--nx", cfg.nx, "Cells per side (default 3000 in 1-D, 351 in 2-D)");
  tel->add_option("--half-width", cfg.half_width, "Domain half width (default 30 / 3.5)");
  tel->add_option("--cfl", cfg.cfl, "CFL number <= 0.5");
  tel->add_option("--t-end", cfg.t_end, "Final time");
  tel->add_flag("--snapshots", cfg.snapshots, "Write the final rho");

  auto* all = app.add_subcommand("reproduce-all", "Run every acceptance criterion");
  all->add_flag("--quick", cfg.quick, "Formula-level criteria only");

  for (CLI::App* sub : {integrals, ham, spd, hydro, sim1, sim2, tel, all}) add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "simulate-2d-discrete" && sim2->count("--tau") == 0) cfg.tau = 8.0;
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run(cfg, std::cout);
}

}  // namespace kinfront::experiments
