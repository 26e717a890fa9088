#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "kinfront/errors.hpp"
#include "kinfront/hamiltonian.hpp"

using namespace kinfront;

namespace {

double oracle_phi(int n, double s) {
  if (n == 1) return s / (s * s - 1.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  const double k = n - 2;
  auto num = [&](double t) { return std::pow(std::sin(t), k) / (s + std::cos(t)); };
  auto den = [&](double t) { return std::pow(std::sin(t), k); };
  return ts.integrate(num, 0.0, std::numbers::pi) / ts.integrate(den, 0.0, std::numbers::pi);
}

// Independent oracle: plain interval halving on
//   Phi((1/tau - alpha) / (a p)) = tau a p / (1 + tau)
// with the tanh-sinh Phi, for points where the root exists.
double oracle_h(int n, double tau, double p) {
  const double a = std::sqrt(n / tau);
  const double target = tau * a * p / (1.0 + tau);
  double hi = 1.0 / tau - a * p;  // s = 1
  double lo = hi - 1.0;
  auto g = [&](double alpha) { return oracle_phi(n, (1.0 / tau - alpha) / (a * p)) - target; };
  while (g(lo) > 0.0) lo = hi - 2.0 * (hi - lo);
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("H(0) = -1 on every route") {
  for (int n = 1; n <= 6; ++n) {
    for (double tau : {0.1, 1.0, 4.0}) {
      const ModelParams mp = ModelParams::make(n, tau);
      CHECK(hamiltonian_radial(mp, 0.0).value == doctest::Approx(-1.0).epsilon(1e-14));
      CHECK(hamiltonian_implicit(mp, 0.0).value == -1.0);
    }
  }
  CHECK(hamiltonian_2d(3.7, 0.0) == doctest::Approx(-1.0));
  CHECK(hamiltonian_1d(4.0, 0.0) == doctest::Approx(-1.0));
  CHECK(hamiltonian_3d(1.0, 0.0) == -1.0);
  CHECK(hamiltonian_3d(1.0, 1e-12) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("one-dimensional closed form") {
  CHECK(hamiltonian_1d(1.0, 1.0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(hamiltonian_implicit(ModelParams::make(1, 1.0), 1.0).value ==
        doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hamiltonian_1d(1.0, -1.0) == hamiltonian_1d(1.0, 1.0));
}

TEST_CASE("two-dimensional closed form against the bisection oracle") {
  CHECK(hamiltonian_2d(1.0, 1.0) == doctest::Approx(1.0 - std::sqrt(6.0)).epsilon(1e-14));
  CHECK(hamiltonian_2d(2.0, 1.0) == doctest::Approx(0.5 - std::sqrt(3.25)).epsilon(1e-14));
  CHECK(hamiltonian_2d(1.0, 10.0) == doctest::Approx(1.0 - std::sqrt(204.0)).epsilon(1e-14));
  CHECK(oracle_h(2, 1.0, 1.0) == doctest::Approx(1.0 - std::sqrt(6.0)).epsilon(1e-10));
  CHECK(oracle_h(2, 2.0, 1.0) == doctest::Approx(-1.302776).epsilon(1e-6));
}

TEST_CASE("three-dimensional closed form against the bisection oracle") {
  // 1 - sqrt(3) coth(sqrt(3)/2)
  const double h = hamiltonian_3d(1.0, 1.0);
  CHECK(h == doctest::Approx(1.0 - std::sqrt(3.0) / std::tanh(std::sqrt(3.0) / 2.0)).epsilon(1e-14));
  CHECK(h == doctest::Approx(-1.4766612).epsilon(1e-7));
  CHECK(oracle_h(3, 1.0, 1.0) == doctest::Approx(h).epsilon(1e-10));
  const double far = hamiltonian_3d(1.0, 20.0);
  CHECK(std::abs(far - (1.0 - 20.0 * std::sqrt(3.0))) <= 1e-6 * std::abs(far));
}

TEST_CASE("closed forms agree with the implicit route") {
  for (int n = 1; n <= 3; ++n) {
    for (double tau : {0.05, 0.25, 1.0, 4.0, 20.0}) {
      for (double p : {1e-6, 0.1, 1.0, 5.0, 20.0, 100.0}) {
        const ModelParams mp = ModelParams::make(n, tau);
        CAPTURE(n);
        CAPTURE(tau);
        CAPTURE(p);
        CHECK(std::abs(hamiltonian_radial(mp, p).value - hamiltonian_implicit(mp, p).value) <= 1e-8);
      }
    }
  }
}

TEST_CASE("higher dimensions: implicit branch against the oracle, transport branch exactly") {
  for (int n : {4, 5, 7}) {
    for (double tau : {0.5, 1.0, 3.0}) {
      const ModelParams mp = ModelParams::make(n, tau);
      const double threshold = transport_threshold(mp).value();
      for (double frac : {0.05, 0.3, 0.9}) {
        const double p = frac * threshold;
        const HamiltonianEval e = hamiltonian_radial(mp, p);
        CHECK(e.branch == HamiltonianBranch::implicit_branch);
        CHECK(e.value == doctest::Approx(oracle_h(n, tau, p)).epsilon(1e-9));
      }
      const double p = 2.0 * threshold;
      const HamiltonianEval e = hamiltonian_radial(mp, p);
      CHECK(e.branch == HamiltonianBranch::transport_branch);
      CHECK(e.value == doctest::Approx(-mp.a * p + 1.0 / tau).epsilon(1e-14));
    }
  }
  const ModelParams five = ModelParams::make(5, 1.0);
  CHECK(hamiltonian_radial(five, 10.0).value == doctest::Approx(-std::sqrt(5.0) * 10.0 + 1.0));
  CHECK(transport_threshold(ModelParams::make(3, 1.0)).is_pos_inf());
}

TEST_CASE("H is continuous across the transport threshold") {
  const ModelParams mp = ModelParams::make(5, 1.0);
  const double pc = transport_threshold(mp).value();
  const double below = hamiltonian_radial(mp, pc * (1.0 - 1e-9)).value;
  const double above = hamiltonian_radial(mp, pc * (1.0 + 1e-9)).value;
  CHECK(std::abs(below - above) <= 1e-6);
}

TEST_CASE("isotropy and concavity on random samples") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n : {1, 2, 3, 4, 6}) {
    const ModelParams mp = ModelParams::make(n, 0.8);
    for (int k = 0; k < 40; ++k) {
      std::vector<double> p(static_cast<std::size_t>(n)), q(p.size()), mid(p.size()), rev(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = u(rng);
        q[i] = u(rng);
        mid[i] = 0.5 * (p[i] + q[i]);
        rev[p.size() - 1 - i] = -p[i];
      }
      const double hp = hamiltonian(mp, p).value;
      const double hq = hamiltonian(mp, q).value;
      CHECK(hamiltonian(mp, mid).value >= 0.5 * (hp + hq) - 1e-10);
      CHECK(std::abs(hamiltonian(mp, rev).value - hp) <= 1e-12);
    }
  }
}

TEST_CASE("transport intercept") {
  CHECK(transport_intercept(ModelParams::make(1, 0.5)) == doctest::Approx(0.5));
  CHECK(transport_intercept(ModelParams::make(1, 3.0)) == doctest::Approx(-1.0 / 3.0));
  CHECK(transport_intercept(ModelParams::make(2, 2.0)) == doctest::Approx(0.5));
  const ModelParams mp = ModelParams::make(2, 2.0);
  CHECK(hamiltonian_radial(mp, 1e6).value + mp.a * 1e6 == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("hydrodynamic limit") {
  const double taus[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  const double p1[] = {1.0};
  const auto r1 = hydro_limit_residual(SphereDim(1), p1, taus);
  CHECK(r1[3] <= 5e-4);
  const double p0[] = {0.0, 0.0};
  for (double r : hydro_limit_residual(SphereDim(2), p0, taus)) CHECK(r <= 1e-12);
  const double p3[] = {2.0, 0.0, 0.0};
  const double halves[] = {1e-3, 5e-4, 2.5e-4, 1.25e-4};
  const auto r3 = hydro_limit_residual(SphereDim(3), p3, halves);
  for (std::size_t i = 1; i < r3.size(); ++i) CHECK(r3[i] / r3[i - 1] == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(ModelParams::make(0, 1.0), DomainError);
  CHECK_THROWS_AS(ModelParams::make(2, 0.0), DomainError);
  CHECK_THROWS_AS(ModelParams::make(2, -1.0), DomainError);
  CHECK_THROWS_AS(hamiltonian_radial(ModelParams::make(2, 1.0), -1.0), DomainError);
  const std::vector<double> wrong{1.0};
  CHECK_THROWS_AS(hamiltonian(ModelParams::make(2, 1.0), wrong), DomainError);
}
