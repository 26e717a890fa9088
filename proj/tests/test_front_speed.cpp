#include <doctest.h>

#include <cmath>
#include <vector>

#include "kinfront/front_speed.hpp"

using namespace kinfront;

TEST_CASE("closed-form speeds") {
  for (double tau : {0.1, 0.25, 0.5, 1.0}) {
    CHECK(std::abs(speed(ModelParams::make(1, tau)).c - 2.0 / (1.0 + tau)) <= 1e-8);
  }
  for (double tau : {1.0, 2.0, 4.0, 10.0}) {
    CHECK(std::abs(speed(ModelParams::make(1, tau)).c - 1.0 / std::sqrt(tau)) <= 1e-8);
  }
  for (double tau : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0}) {
    CHECK(std::abs(speed(ModelParams::make(2, tau)).c - std::sqrt(2.0 * (2.0 + tau)) / (1.0 + tau)) <= 1e-8);
  }
  CHECK(speed(ModelParams::make(1, 0.25)).c == doctest::Approx(1.6));
  CHECK(speed(ModelParams::make(1, 4.0)).c == doctest::Approx(0.5));
  CHECK(speed(ModelParams::make(2, 2.0)).c == doctest::Approx(std::sqrt(8.0) / 3.0));
  CHECK(speed(ModelParams::make(1, 1.0)).c == doctest::Approx(1.0));
}

TEST_CASE("three-dimensional speeds (regression values)") {
  CHECK(speed(ModelParams::make(3, 0.5)).c == doctest::Approx(1.5751235720).epsilon(1e-9));
  CHECK(speed(ModelParams::make(3, 1.0)).c == doctest::Approx(1.3361922000).epsilon(1e-9));
  CHECK(speed(ModelParams::make(3, 2.0)).c == doctest::Approx(1.0659177829).epsilon(1e-9));
  CHECK(speed(ModelParams::make(3, 4.0)).c == doctest::Approx(0.8082122914).epsilon(1e-9));
  const SpeedResult s = speed(ModelParams::make(3, 1.0));
  CHECK(s.c < std::sqrt(3.0));
  CHECK(s.p_star.is_finite());
}

TEST_CASE("speed is the sup of -H/|p| and p* attains it") {
  for (int n : {2, 3, 5}) {
    const ModelParams mp = ModelParams::make(n, 1.5);
    const SpeedResult s = speed(mp);
    const double ps = s.p_star.value();
    CHECK(-hamiltonian_radial(mp, ps).value / ps == doctest::Approx(s.c).epsilon(1e-10));
    for (double f : {0.3, 0.7, 1.4, 3.0}) {
      CHECK(-hamiltonian_radial(mp, f * ps).value / (f * ps) >= s.c - 1e-12);
    }
  }
}

TEST_CASE("phase transition flags") {
  const std::vector<double> taus{0.5, 1.0, 2.0};
  const auto rows = phase_diagram(SphereDim(1), taus);
  CHECK_FALSE(rows[0].is_hyperbolic);
  CHECK(rows[1].is_hyperbolic);
  CHECK(rows[2].is_hyperbolic);
  CHECK(speed(ModelParams::make(1, 4.0)).p_star.is_pos_inf());
  for (double tau : {0.5, 4.0, 100.0}) {
    const SpeedResult s = speed(ModelParams::make(2, tau));
    CHECK_FALSE(s.is_hyperbolic);
    CHECK(s.c < s.a - 1e-6);
  }
  const SpeedResult near = speed(ModelParams::make(1, 1.0 - 1e-9));
  CHECK_FALSE(near.is_hyperbolic);
  CHECK(std::abs(near.c - near.a) < 1e-4);
}

TEST_CASE("Legendre dual") {
  CHECK(legendre_1d(0.25, 1.6).value() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(legendre_1d(0.25, 1.6).value()) <= 1e-12);
  CHECK(legendre_1d(4.0, 1.0).is_neg_inf());
  CHECK(legendre_radial(ModelParams::make(2, 1.0), 0.0).value.value() == doctest::Approx(1.0).epsilon(1e-10));
  const ModelParams two = ModelParams::make(2, 1.0);
  const std::vector<double> q{speed(two).c, 0.0};
  CHECK(std::abs(legendre(two, q).value.value()) <= 1e-8);
  for (double tau : {0.5, 2.0}) {
    for (double x : {-0.95, -0.3, 0.0, 0.4, 0.9}) {
      const double q1 = x / std::sqrt(tau);
      const double num = legendre_radial(ModelParams::make(1, tau), std::abs(q1)).value.value();
      CHECK(std::abs(num - legendre_1d(tau, q1).value()) <= 1e-8);
    }
  }
  CHECK(legendre_radial(ModelParams::make(1, 4.0), 0.6).value.is_neg_inf());
  CHECK(legendre_radial(ModelParams::make(1, 4.0), 0.4).value.value() > 0.0);
}

TEST_CASE("front radius") {
  const ModelParams mp = ModelParams::make(2, 2.0);
  CHECK(front_radius(mp, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(front_radius(mp, 3.0, 1.0) == doctest::Approx(1.0 + std::sqrt(8.0)));
  CHECK(front_radius(ModelParams::make(1, 0.25), 10.0, 0.0) == doctest::Approx(16.0));
}
