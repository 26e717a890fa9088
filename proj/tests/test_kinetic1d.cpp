#include <doctest.h>

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "kinfront/errors.hpp"
#include "kinfront/kinetic1d.hpp"

using namespace kinfront;
using namespace kinfront::kinetic1d;

namespace {

double logistic_ode(double r0, double t) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  State x{r0};
  odeint::integrate_adaptive(odeint::make_controlled(1e-14, 1e-14, odeint::runge_kutta_dopri5<State>()),
                             [](const State& y, State& dy, double) { dy[0] = y[0] * (1.0 - y[0]); },
                             x, 0.0, t, 1e-3);
  return x[0];
}

KineticState1D uniform(int nx, double value, double tau) {
  return make_state(std::vector<double>(static_cast<std::size_t>(nx), value), tau);
}

}  // namespace

TEST_CASE("grid invariants") {
  const Grid1D g = Grid1D::make(-1.0, 3.0, 400, 0.8, 2.0);
  CHECK(g.dx == doctest::Approx(0.01));
  CHECK(g.dt <= 0.8 * g.dx / 2.0 * (1.0 + 1e-15));
  CHECK(g.x(0) == doctest::Approx(-0.995));
  CHECK_THROWS_AS(Grid1D::make(0.0, 1.0, 4, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Grid1D::make(0.0, 1.0, 100, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(Grid1D::make(1.0, 0.0, 100, 1.0, 1.0), DomainError);
  CHECK(upper_bound(0.5) == 1.0);
  CHECK(upper_bound(4.0) == doctest::Approx(25.0 / 16.0));
}

TEST_CASE("uniform fixed points") {
  const Grid1D g = Grid1D::make(0.0, 1.0, 16, 1.0, transport_speed(0.5));
  for (double v : {0.0, 1.0}) {
    KineticState1D s = uniform(16, v, 0.5);
    for (int k = 0; k < 50; ++k) step(s, g, Nonlinearity::logistic);
    for (int i = 0; i < 16; ++i) {
      CHECK(s.p_plus[i] == v);
      CHECK(s.p_minus[i] == v);
    }
  }
}

TEST_CASE("spatially constant data follow the logistic ODE") {
  for (double tau : {0.25, 2.0}) {
    for (double r0 : {0.01, 0.3, 0.9}) {
      const Grid1D g = Grid1D::make(0.0, 1.0, 16, 1.0, transport_speed(tau));
      KineticState1D s = uniform(16, r0, tau);
      while (s.t < 5.0 - 1e-12) step(s, g, Nonlinearity::logistic);
      const double expected = logistic_ode(r0, s.t);
      CAPTURE(tau);
      CAPTURE(r0);
      for (int i = 0; i < 16; ++i) {
        CHECK(s.p_plus[i] == doctest::Approx(expected).epsilon(1e-11));
        CHECK(s.p_minus[i] == doctest::Approx(expected).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("positive-part nonlinearity switches the reaction off above one") {
  const double tau = 2.0;
  const Grid1D g = Grid1D::make(0.0, 1.0, 16, 1.0, transport_speed(tau));
  KineticState1D a = uniform(16, 1.2, tau);
  KineticState1D b = uniform(16, 1.2, tau);
  for (int k = 0; k < 20; ++k) {
    step(a, g, Nonlinearity::logistic_plus);
    step(b, g, Nonlinearity::logistic);
  }
  CHECK(a.rho(3) == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(b.rho(3) < 1.2);
}

TEST_CASE("positivity and the a priori bound on random data") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int nx = 200;
  for (double tau : {0.5, 1.0, 4.0}) {
    for (double cfl : {1.0, 0.7, 0.3}) {
      for (auto nl : {Nonlinearity::logistic, Nonlinearity::logistic_plus}) {
        const Grid1D g = Grid1D::make(-5.0, 5.0, nx, cfl, transport_speed(tau));
        KineticState1D s = uniform(nx, 0.0, tau);
        for (int i = 0; i < nx; ++i) {
          s.p_plus[i] = u(rng) < 0.3 ? 0.0 : u(rng);
          s.p_minus[i] = u(rng) < 0.3 ? 0.0 : u(rng);
        }
        double lo = 0.0;
        double hi = 0.0;
        for (int k = 0; k < 400; ++k) {
          step(s, g, nl);
          const FieldExtrema e = field_extrema(s);
          lo = std::min(lo, e.min_field);
          hi = std::max(hi, e.max_field);
        }
        CAPTURE(tau);
        CAPTURE(cfl);
        CHECK(lo >= -1e-12);
        CHECK(hi <= upper_bound(tau) * (1.0 + 1e-6));
      }
    }
  }
}

TEST_CASE("scaled system on the scaled grid reproduces the unscaled solution") {
  const double tau = 0.7;
  const double eps = 0.05;
  const int nx = 300;
  const double a = transport_speed(tau);
  const Grid1D g1 = Grid1D::make(-10.0, 10.0, nx, 0.9, a);
  const Grid1D ge = Grid1D::make(-10.0 * eps, 10.0 * eps, nx, 0.9, a);
  std::vector<double> rho0(nx);
  for (int i = 0; i < nx; ++i) rho0[i] = std::exp(-g1.x(i) * g1.x(i));
  KineticState1D s1 = make_state(rho0, tau);
  KineticState1D se = make_state(rho0, tau, eps);
  for (int k = 0; k < 150; ++k) {
    step(s1, g1, Nonlinearity::logistic_plus);
    step(se, ge, Nonlinearity::logistic_plus);
  }
  CHECK(se.t == doctest::Approx(eps * s1.t));
  double diff = 0.0;
  for (int i = 0; i < nx; ++i) {
    diff = std::max(diff, std::abs(s1.p_plus[i] - se.p_plus[i]));
    diff = std::max(diff, std::abs(s1.p_minus[i] - se.p_minus[i]));
  }
  CHECK(diff <= 1e-12);
}

TEST_CASE("step diagnostics") {
  const double tau = 1.0;
  const Grid1D slow = Grid1D::make(0.0, 1.0, 16, 1.0, 0.5 * transport_speed(tau));
  KineticState1D s = uniform(16, 0.5, tau);
  CHECK_THROWS_AS(step(s, slow, Nonlinearity::logistic), SimulationError);
  const Grid1D g = Grid1D::make(0.0, 1.0, 16, 1.0, transport_speed(tau));
  s.p_plus[4] = NAN;
  CHECK_THROWS_AS(step(s, g, Nonlinearity::logistic), SimulationError);
  KineticState1D wrong = uniform(10, 0.5, tau);
  CHECK_THROWS_AS(step(wrong, g, Nonlinearity::logistic), SimulationError);
}

TEST_CASE("front tracking") {
  const double tau = 1.0;
  const double a = transport_speed(tau);
  const Grid1D g = Grid1D::make(-10.0, 30.0, 1600, 1.0, a);
  const KineticState1D s0 = indicator_state(g, -10.0, 0.0, tau);

  const TailProfile t0 = tail_profile(s0, g);
  CHECK(std::abs(t0.gap) <= g.dx);
  CHECK(std::abs(t0.front_pos) <= g.dx);

  TrackOptions opts;
  opts.steps_per_sample = 8;
  const FrontTrace tr = run_and_track(s0, g, 15.0, opts);
  CHECK(tr.fitted_speed == doctest::Approx(1.0).epsilon(0.05));
  CHECK(tr.fit_residual >= 0.0);
  const std::size_t burn = tr.positions.size() / 4;
  for (std::size_t i = burn + 1; i < tr.positions.size(); ++i) {
    CHECK(tr.positions[i] >= tr.positions[i - 1] - 1e-12);
  }
  for (std::size_t i = 0; i < tr.positions.size(); ++i) CHECK(tr.support_edges[i] >= tr.positions[i] - g.dx);
  CHECK(tr.extrema.min_field >= -1e-12);

  CHECK_THROWS_AS(run_and_track(s0, g, 40.0, opts), SimulationError);
  opts.level = 1.5;
  CHECK_THROWS_AS(run_and_track(s0, g, 1.0, opts), DomainError);
}

TEST_CASE("front position interpolates the level crossing") {
  const Grid1D g = Grid1D::make(0.0, 10.0, 10, 1.0, 1.0);
  std::vector<double> rho(10, 0.0);
  rho[0] = rho[1] = rho[2] = 1.0;
  rho[3] = 0.25;
  const KineticState1D s = make_state(rho, 1.0);
  CHECK(front_position(s, g, 0.5) == doctest::Approx(2.5 + 2.0 / 3.0));
  CHECK(support_edge(s, g, 0.0) == doctest::Approx(3.5));
  const KineticState1D empty = make_state(std::vector<double>(10, 0.0), 1.0);
  CHECK(front_position(empty, g, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("telegraph through the kinetic system") {
  const double tau = 2.0;
  const Grid1D g = Grid1D::make(-30.0, 30.0, 1200, 1.0, transport_speed(tau));
  for (double v : {0.0, 1.0}) {
    const TelegraphRun r = telegraph_via_kinetic(std::vector<double>(1200, v), g, tau, 3.0);
    CHECK(r.min_rho == doctest::Approx(v));
    CHECK(r.max_rho == doctest::Approx(v));
  }
  std::vector<double> bump(1200);
  for (int i = 0; i < 1200; ++i) bump[i] = std::exp(-g.x(i) * g.x(i));
  const TelegraphRun r = telegraph_via_kinetic(bump, g, tau, 10.0);
  CHECK(r.t == doctest::Approx(10.0));
  CHECK(r.min_rho >= -1e-8);
  CHECK(r.max_rho <= 2.0);
  bump[3] = 1.5;
  CHECK_THROWS_AS(telegraph_via_kinetic(bump, g, tau, 1.0), DomainError);
}
