#include <doctest.h>

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <vector>

#include "kinfront/discrete_kinetic2d.hpp"
#include "kinfront/errors.hpp"

using namespace kinfront;
using namespace kinfront::discrete2d;

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

}  // namespace

TEST_CASE("cone amplitude and initial data") {
  CHECK(cone_amplitude(8.0) == doctest::Approx(2.5));
  CHECK(transport_speed(8.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(init_cones(Grid2D::make(1.0, 21, 1.0, 1.0), 3.0), DomainError);

  const Grid2D g = Grid2D::make(1.0, 21, 1.0, transport_speed(8.0));
  const DiscreteKineticState2D s = init_cones(g, 8.0);
  const int c = g.centre();
  CHECK(g.coord(c) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.p_e1[g.index(c - 5, c + 1)] == 2.5);   // left cone
  CHECK(s.p_me1[g.index(c + 5, c - 2)] == 2.5);  // right cone
  CHECK(s.p_me2[g.index(c + 1, c + 6)] == 2.5);  // upper cone
  CHECK(s.p_e1[g.index(c + 5, c)] == 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(s.p_e2[k] == 0.0);
    CHECK(s.rho(k) <= 1.0);
  }
}

TEST_CASE("quasi-equilibrium inside an occupied cone") {
  for (double tau : {4.5, 8.0, 20.0}) {
    const double A = cone_amplitude(tau);
    CHECK(std::abs(source_term(A, 0.25 * A, tau, Reaction2D::logistic)) <= 1e-14);
    CHECK(source_term(0.0, 0.25 * A, tau, Reaction2D::logistic) == doctest::Approx(probe_source(0.25 * A, tau)));
    CHECK(probe_source(0.25 * A, tau) > 0.0);
  }
}

TEST_CASE("probe source is decreasing beyond (tau + 1) / (2 tau)") {
  for (double tau : {1.5, 4.0, 8.0, 50.0}) {
    const double start = (tau + 1.0) / (2.0 * tau);
    double prev = probe_source(start, tau);
    for (double r = start + 0.01; r < 3.0; r += 0.01) {
      const double v = probe_source(r, tau);
      CHECK(v < prev);
      prev = v;
    }
  }
  // at rho = 3 (1 - 3/tau) the zero e2 velocity is pushed down once tau > 4
  CHECK(probe_source(3.0 * (1.0 - 3.0 / 8.0), 8.0) < 0.0);
  CHECK(probe_source(3.0 * (1.0 - 3.0 / 4.0), 4.0) > 0.0);
}

TEST_CASE("uniform states follow the logistic ODE") {
  const double tau = 6.0;
  const Grid2D g = Grid2D::make(1.0, 9, 1.0, transport_speed(tau));
  for (auto reaction : {Reaction2D::logistic, Reaction2D::logistic_plus, Reaction2D::per_velocity}) {
    DiscreteKineticState2D s = uniform_state(g, tau, 0.2);
    while (s.t < 3.0) step(s, g, reaction);
    const double expected = logistic_ode(0.2, s.t);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(s.p_e1[k] == doctest::Approx(expected).epsilon(1e-11));
      CHECK(s.rho(k) == doctest::Approx(expected).epsilon(1e-11));
    }
  }
  DiscreteKineticState2D one = uniform_state(g, tau, 1.0);
  step(one, g, Reaction2D::logistic);
  CHECK(one.min_value() == 1.0);
}

TEST_CASE("mirror symmetry x1 -> -x1 is preserved") {
  const double tau = 8.0;
  const Grid2D g = Grid2D::for_probe(0.2, 10, 0.6, transport_speed(tau));
  DiscreteKineticState2D s = init_cones(g, tau);
  for (int k = 0; k < 30; ++k) step(s, g, Reaction2D::logistic);
  double worst = 0.0;
  for (int j = 0; j < g.nx; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      const std::size_t m = g.index(g.nx - 1 - i, j);
      worst = std::max(worst, std::abs(s.p_e1[k] - s.p_me1[m]));
      worst = std::max(worst, std::abs(s.p_e2[k] - s.p_e2[m]));
      worst = std::max(worst, std::abs(s.p_me2[k] - s.p_me2[m]));
    }
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("negativity probe: logistic reaction goes negative at the witness resolution") {
  const ProbeResult r = negativity_probe(8.0, 0.2, 1.0);
  CHECK(r.status == ProbeStatus::negative);
  CHECK(r.min_value < 0.0);
  CHECK(r.longest_negative_run >= 10);
  CHECK(r.max_overlap_rho >= r.overlap_target);
  CHECK(r.overlap_target == doctest::Approx(3.0 * 0.9 * (1.0 - 3.0 / 8.0)));
  CHECK(r.min_value == doctest::Approx(-0.57).epsilon(0.05));
  CHECK(r.dx == doctest::Approx(0.01));
}

TEST_CASE("negativity probe: positivity-preserving reactions stay nonnegative") {
  for (auto reaction : {Reaction2D::logistic_plus, Reaction2D::per_velocity}) {
    ProbeOptions o;
    o.reaction = reaction;
    const ProbeResult r = negativity_probe(8.0, 0.2, 1.0, o);
    CHECK(r.global_min >= -1e-12);
    CHECK(r.status != ProbeStatus::negative);
  }
}

TEST_CASE("negativity probe before the cones meet the probe") {
  const double a = transport_speed(8.0);
  const ProbeResult r = negativity_probe(8.0, 0.2, 0.9 * 0.2 / (2.0 * a));
  CHECK(r.min_value == 0.0);
  CHECK(r.status != ProbeStatus::negative);
}

TEST_CASE("coarse runs report insufficient overlap rather than non-reproduction") {
  ProbeOptions o;
  o.cells_per_delta = 20;
  const ProbeResult r = negativity_probe(8.0, 0.2, 0.1, o);
  CHECK(r.status == ProbeStatus::insufficient_overlap);
}

TEST_CASE("reaction names and errors") {
  CHECK(reaction_from_string("local") == Reaction2D::logistic);
  CHECK(reaction_from_string("nonlocal-plus") == Reaction2D::logistic_plus);
  CHECK(reaction_from_string("per-velocity") == Reaction2D::per_velocity);
  CHECK(reaction_from_string(to_string(Reaction2D::logistic_plus)) == Reaction2D::logistic_plus);
  CHECK_THROWS_AS(reaction_from_string("cubic"), DomainError);
  CHECK_THROWS_AS(negativity_probe(4.0, 0.2, 1.0), DomainError);
  CHECK_THROWS_AS(Grid2D::make(1.0, 20, 1.0, 1.0), DomainError);
  const Grid2D g = Grid2D::make(1.0, 9, 1.0, 0.5 * transport_speed(8.0));
  DiscreteKineticState2D s = uniform_state(g, 8.0, 0.3);
  CHECK_THROWS_AS(step(s, g, Reaction2D::logistic), SimulationError);
}
