#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kinfront/discrete_kinetic2d.hpp"
#include "kinfront/errors.hpp"
#include "kinfront/front_speed.hpp"
#include "kinfront/hamiltonian.hpp"
#include "kinfront/kinetic1d.hpp"
#include "kinfront/sphere_integrals.hpp"
#include "kinfront/telegraph.hpp"

namespace py = pybind11;
using namespace kinfront;

namespace {

kinetic1d::Nonlinearity nonlinearity_from(const std::string& name) {
  if (name == "logistic") return kinetic1d::Nonlinearity::logistic;
  if (name == "logistic-plus" || name == "logistic_plus") return kinetic1d::Nonlinearity::logistic_plus;
  throw DomainError("unknown nonlinearity '" + name + "'");
}

py::dict speed_dict(const SpeedResult& s) {
  py::dict d;
  d["c"] = s.c;
  d["a"] = s.a;
  d["p_star"] = s.p_star.to_double();
  d["is_hyperbolic"] = s.is_hyperbolic;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Front speeds, effective Hamiltonians and positivity experiments for reactive kinetic models";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

  m.def("phi", [](int n, double s) { return phi(SphereDim(n), s).value.to_double(); }, py::arg("n"),
        py::arg("s"), "Sphere average of 1/(s + v_1); inf where it diverges.");
  m.def("phi_power",
        [](int n, double s, double mu) { return phi_power(SphereDim(n), s, mu).to_double(); },
        py::arg("n"), py::arg("s"), py::arg("mu"));
  m.def("second_moment",
        [](const std::vector<double>& w) { return second_moment(SphereDim(static_cast<int>(w.size())), w); },
        py::arg("w"));

  m.def("hamiltonian",
        [](int n, double tau, double p_norm) { return hamiltonian_radial(ModelParams::make(n, tau), p_norm).value; },
        py::arg("n"), py::arg("tau"), py::arg("p_norm"));
  m.def("hamiltonian_branch",
        [](int n, double tau, double p_norm) {
          return std::string(to_string(hamiltonian_radial(ModelParams::make(n, tau), p_norm).branch));
        },
        py::arg("n"), py::arg("tau"), py::arg("p_norm"));
  m.def("hydro_limit_residual",
        [](int n, double p_norm, const std::vector<double>& taus) {
          std::vector<double> p(static_cast<std::size_t>(n), 0.0);
          p[0] = p_norm;
          return hydro_limit_residual(SphereDim(n), p, taus);
        },
        py::arg("n"), py::arg("p_norm"), py::arg("taus"));

  m.def("speed", [](int n, double tau) { return speed_dict(speed(ModelParams::make(n, tau))); },
        py::arg("n"), py::arg("tau"));
  m.def("phase_diagram",
        [](int n, const std::vector<double>& taus) {
          py::list rows;
          for (const PhaseRow& r : phase_diagram(SphereDim(n), taus)) {
            py::dict d;
            d["tau"] = r.tau;
            d["c"] = r.c;
            d["a"] = r.a;
            d["is_hyperbolic"] = r.is_hyperbolic;
            rows.append(d);
          }
          return rows;
        },
        py::arg("n"), py::arg("taus"));
  m.def("legendre",
        [](int n, double tau, double q_norm) {
          return legendre_radial(ModelParams::make(n, tau), q_norm).value.to_double();
        },
        py::arg("n"), py::arg("tau"), py::arg("q_norm"), "Concave dual L(q); -inf off its domain.");
  m.def("front_radius",
        [](int n, double tau, double t, double r0) { return front_radius(ModelParams::make(n, tau), t, r0); },
        py::arg("n"), py::arg("tau"), py::arg("t"), py::arg("r0"));

  m.def(
      "simulate_1d",
      [](double tau, int nx, double t_end, double cfl, const std::string& nonlinearity) {
        const double a = kinetic1d::transport_speed(tau);
        const auto grid = kinetic1d::Grid1D::make(-10.0, a * t_end + 20.0, nx, cfl, a);
        kinetic1d::TrackOptions opts;
        opts.nonlinearity = nonlinearity_from(nonlinearity);
        opts.steps_per_sample = std::max(1, static_cast<int>(std::lround(0.1 / grid.dt)));
        const auto tr = kinetic1d::run_and_track(kinetic1d::indicator_state(grid, -10.0, 0.0, tau), grid,
                                                 t_end, opts);
        py::dict d;
        d["fitted_speed"] = tr.fitted_speed;
        d["fit_residual"] = tr.fit_residual;
        d["times"] = tr.times;
        d["front_pos"] = tr.positions;
        d["support_edge"] = tr.support_edges;
        d["min_field"] = tr.extrema.min_field;
        d["max_field"] = tr.extrema.max_field;
        return d;
      },
      py::arg("tau"), py::arg("nx") = 4000, py::arg("t_end") = 40.0, py::arg("cfl") = 1.0,
      py::arg("nonlinearity") = "logistic-plus",
      "Two-speed kinetic front from indicator data on [-10, 0].");

  m.def(
      "negativity_probe",
      [](double tau, double delta, double t_end, int cells_per_delta, const std::string& reaction) {
        discrete2d::ProbeOptions o;
        o.cells_per_delta = cells_per_delta;
        o.reaction = discrete2d::reaction_from_string(reaction);
        const auto r = discrete2d::negativity_probe(tau, delta, t_end, o);
        py::dict d;
        d["min_value"] = r.min_value;
        d["min_t"] = r.min_t;
        d["global_min"] = r.global_min;
        d["max_overlap_rho"] = r.max_overlap_rho;
        d["overlap_target"] = r.overlap_target;
        d["longest_negative_run"] = r.longest_negative_run;
        d["status"] = discrete2d::to_string(r.status);
        return d;
      },
      py::arg("tau"), py::arg("delta"), py::arg("t_end"), py::arg("cells_per_delta") = 20,
      py::arg("reaction") = "logistic");

  m.def(
      "telegraph_negativity_2d",
      [](double tau, double epsilon, double delta, double t_end, double dx, double half_width) {
        telegraph::SweepOptions o;
        o.dx = dx;
        o.half_width = half_width;
        const auto r = telegraph::negativity_run_2d(telegraph::GaussianBump{epsilon, delta}, tau, t_end, o);
        py::dict d;
        d["min_rho"] = r.min_rho;
        d["t_min"] = r.t_min;
        d["threshold"] = r.threshold;
        d["longest_run"] = r.longest_run;
        d["negative"] = r.negative;
        d["in_proof_regime"] = r.in_proof_regime;
        return d;
      },
      py::arg("tau"), py::arg("epsilon"), py::arg("delta"), py::arg("t_end"), py::arg("dx") = 0.02,
      py::arg("half_width") = 3.5);

  m.def(
      "telegraph_bound_check_1d",
      [](const std::vector<double>& rho0, double x_min, double x_max, double tau, double t_end) {
        const auto grid = telegraph::TelegraphGrid::make(1, x_min, x_max, static_cast<int>(rho0.size()));
        const auto b = telegraph::bound_check_1d(rho0, grid, tau, t_end);
        py::dict d;
        d["min_rho"] = b.min_rho;
        d["max_rho"] = b.max_rho;
        d["kinetic_linf_diff"] = b.kinetic_linf_diff;
        return d;
      },
      py::arg("rho0"), py::arg("x_min"), py::arg("x_max"), py::arg("tau"), py::arg("t_end"),
      "Telegraph extrema from rho0 sampled at the cell centres of [x_min, x_max].");
}
