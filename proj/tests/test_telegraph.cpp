#include <doctest.h>

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <vector>

#include "kinfront/errors.hpp"
#include "kinfront/kinetic1d.hpp"
#include "kinfront/telegraph.hpp"

using namespace kinfront;
using namespace kinfront::telegraph;

namespace {

// rho' = w, tau w' = rho (1 - rho) - (1 - tau + 2 tau rho) w
double damped_ode(double r0, double tau, double t) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  State x{r0, 0.0};
  auto rhs = [tau](const State& y, State& dy, double) {
    dy[0] = y[1];
    dy[1] = (y[0] * (1.0 - y[0]) - (1.0 - tau + 2.0 * tau * y[0]) * y[1]) / tau;
  };
  odeint::integrate_adaptive(odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>()),
                             rhs, x, 0.0, t, 1e-3);
  return x[0];
}

double uniform_error(double tau, double dt) {
  const TelegraphGrid g = TelegraphGrid::make(1, 0.0, 1.0, 8);
  TelegraphState s = make_state(g, std::vector<double>(8, 0.1), tau);
  const int steps = static_cast<int>(std::lround(3.0 / dt));
  for (int k = 0; k < steps; ++k) step(s, g, dt);
  return std::abs(s.rho[3] - damped_ode(0.1, tau, 3.0));
}

std::vector<double> bump_1d(const TelegraphGrid& g) {
  std::vector<double> r(g.size());
  for (int i = 0; i < g.nx; ++i) r[i] = std::exp(-g.coord(i) * g.coord(i));
  return r;
}

}  // namespace

TEST_CASE("grids") {
  const TelegraphGrid g = TelegraphGrid::centred(2, 3.5, 0.02);
  CHECK(g.nx % 2 == 1);
  CHECK(g.coord((g.nx - 1) / 2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(g.size() == static_cast<std::size_t>(g.nx) * g.nx);
  CHECK(max_dt(g, 4.0, 0.5) == doctest::Approx(0.5 * g.dx * 2.0));
  CHECK_THROWS_AS(max_dt(g, 1.0, 0.8), DomainError);
  CHECK_THROWS_AS(TelegraphGrid::make(3, 0.0, 1.0, 10), DomainError);
}

TEST_CASE("uniform states follow the damped ODE at second order") {
  for (double tau : {0.5, 1.0, 2.0}) {
    const double e1 = uniform_error(tau, 0.02);
    const double e2 = uniform_error(tau, 0.01);
    CAPTURE(tau);
    CHECK(e1 <= 1e-4);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
  }
}

TEST_CASE("zero data stay zero") {
  const TelegraphGrid g = TelegraphGrid::centred(2, 1.0, 0.05);
  const RunExtrema r = run(make_state(g, std::vector<double>(g.size(), 0.0), 1.0), g, 1.0);
  CHECK(r.min_rho == 0.0);
  CHECK(r.max_rho == 0.0);
  const NegativityReport rep = negativity_run_2d(GaussianBump{0.0, 0.2}, 1.0, 0.5);
  CHECK(rep.min_rho == 0.0);
  CHECK_FALSE(rep.negative);
}

TEST_CASE("damped wave energy is non-increasing with frozen damping and no reaction") {
  const TelegraphGrid g = TelegraphGrid::centred(2, 2.0, 0.04);
  TelegraphOptions o;
  o.reaction = false;
  o.frozen_damping = true;
  o.damping = 0.5;
  TelegraphState s = make_state(g, sample_bump(g, GaussianBump{0.1, 0.2}), 1.0);
  const double dt = max_dt(g, 1.0);
  double prev = wave_energy(s, g);
  const double e0 = prev;
  int increases = 0;
  for (int k = 0; k < 200; ++k) {
    step(s, g, dt, o);
    const double e = wave_energy(s, g);
    if (e > prev * (1.0 + 1e-12)) ++increases;
    prev = e;
  }
  CHECK(increases == 0);
  CHECK(prev < e0);
}

TEST_CASE("2-D bump stays radially symmetric") {
  const TelegraphGrid g = TelegraphGrid::centred(2, 2.0, 0.02);
  const RunExtrema r = run(make_state(g, sample_bump(g, GaussianBump{0.1, 0.2}), 1.0), g, 0.6);
  const int c = (g.nx - 1) / 2;
  auto at = [&](int di, int dj) { return r.final_rho[static_cast<std::size_t>(c + dj) * g.nx + (c + di)]; };
  double transpose = 0.0;
  for (int di = -20; di <= 20; ++di) {
    for (int dj = -20; dj <= 20; ++dj) transpose = std::max(transpose, std::abs(at(di, dj) - at(dj, di)));
  }
  CHECK(transpose <= 1e-15);
  // cells (30, 40) and (50, 0) are both 50 cells from the centre
  const double scale = r.max_rho - r.min_rho;
  CHECK(std::abs(at(30, 40) - at(50, 0)) <= 2e-2 * scale);
  CHECK(std::abs(at(-30, 40) - at(0, -50)) <= 2e-2 * scale);
}

TEST_CASE("one-dimensional bounds and the kinetic cross-check") {
  const TelegraphGrid g = TelegraphGrid::make(1, -30.0, 30.0, 3000);
  const std::vector<double> zero(g.size(), 0.0);
  const BoundCheck z = bound_check_1d(zero, g, 2.0, 2.0);
  CHECK(z.min_rho == 0.0);
  CHECK(z.max_rho == 0.0);
  const std::vector<double> b = bump_1d(g);
  for (double tau : {0.5, 1.0, 2.0, 4.0}) {
    const BoundCheck bc = bound_check_1d(b, g, tau, 10.0);
    CAPTURE(tau);
    CHECK(bc.min_rho >= -1e-6);
    CHECK(bc.max_rho <= 2.0 + 1e-6);
    CHECK(bc.kinetic_linf_diff <= bc.kinetic_tolerance);
    if (tau == 0.5) CHECK(bc.max_rho <= 1.0 + 1e-4);
  }
}

TEST_CASE("kinetic cross-check converges with the grid") {
  double prev = 0.0;
  for (int nx : {600, 1200, 2400}) {
    const TelegraphGrid g = TelegraphGrid::make(1, -30.0, 30.0, nx);
    const double diff = bound_check_1d(bump_1d(g), g, 1.0, 5.0).kinetic_linf_diff;
    if (prev > 0.0) CHECK(diff < 0.7 * prev);
    prev = diff;
  }
}

TEST_CASE("2-D negativity witness (regression fixture)") {
  const double delta = 0.2;
  const GaussianBump bump{std::pow(delta, 1.25), delta};
  CHECK(bump.in_proof_regime());
  const NegativityReport rep = negativity_run_2d(bump, 1.0, 3.0 * std::sqrt(delta));
  CHECK(rep.negative);
  CHECK(rep.longest_run >= 10);
  CHECK(rep.min_rho < rep.threshold);
  CHECK(rep.min_rho == doctest::Approx(-0.0275).epsilon(0.02));
  CHECK(rep.t_min == doctest::Approx(0.67).epsilon(0.05));
}

TEST_CASE("bump parameters and sweep helpers") {
  CHECK_FALSE(GaussianBump{0.5, 0.2}.in_proof_regime());
  CHECK_THROWS_AS((GaussianBump{-0.1, 0.2}.validate()), DomainError);
  CHECK_THROWS_AS((GaussianBump{0.1, 1.5}.validate()), DomainError);
  CHECK(GaussianBump{0.3, 0.5}(0.5) == doctest::Approx(0.3 * std::exp(-1.0)));
  const std::vector<double> deltas{0.05, 0.2};
  const auto pairs = proof_regime_pairs(deltas);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[1].first == doctest::Approx(std::pow(0.2, 1.25)));
  CHECK(pairs[1].second == 0.2);
}

TEST_CASE("step diagnostics") {
  const TelegraphGrid g = TelegraphGrid::make(1, 0.0, 1.0, 10);
  TelegraphState s = make_state(g, std::vector<double>(10, 0.5), 1.0);
  CHECK_THROWS_AS(step(s, g, 10.0), SimulationError);
  s.rho[2] = NAN;
  CHECK_THROWS_AS(step(s, g, max_dt(g, 1.0)), SimulationError);
  CHECK_THROWS_AS(make_state(g, std::vector<double>(9, 0.5), 1.0), DomainError);
}
