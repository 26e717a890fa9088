#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kinfront/errors.hpp"
#include "kinfront/extended_real.hpp"
#include "kinfront/format.hpp"
#include "kinfront/numerics.hpp"

using namespace kinfront;

TEST_CASE("adaptive quadrature integrates smooth and endpoint-singular functions") {
  auto r = numerics::integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13, 1e-13);
  CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  r = numerics::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 1e-10);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(numerics::integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-14,
                                               1e-14, 50),
                  ConvergenceError);
}

TEST_CASE("golden section finds the minimum of a convex function") {
  const auto m = numerics::golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3); },
                                                   -2.0, 5.0, 1e-10);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("bisection tolerates +inf at the upper end and rejects a missing bracket") {
  auto f = [](double x) { return x >= 1.0 ? INFINITY : std::log(x) + 1.0; };
  const auto r = numerics::bisect_increasing(f, 0.01, 1.0, 1e-15);
  CHECK(r.x == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
  CHECK_THROWS_AS(numerics::bisect_increasing(f, 0.5, 1.0, 1e-15), ConvergenceError);
}

TEST_CASE("line fit recovers an exact line") {
  const double x[] = {0.0, 1.0, 2.0, 3.0};
  const double y[] = {1.0, 3.0, 5.0, 7.0};
  const auto fit = numerics::fit_line(x, y, 4);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.rms_residual < 1e-14);
  CHECK_THROWS_AS(numerics::fit_line(x, y, 1), DomainError);
}

TEST_CASE("extended reals order infinities around finite values") {
  const auto one = ExtendedReal::finite(1.0);
  CHECK(ExtendedReal::neg_inf() < one);
  CHECK(one < ExtendedReal::pos_inf());
  CHECK(ExtendedReal::pos_inf() == ExtendedReal::pos_inf());
  CHECK_THROWS_AS((void)ExtendedReal::pos_inf().value(), std::logic_error);
  CHECK(std::isinf(ExtendedReal::pos_inf().to_double()));
}

TEST_CASE("doubles are printed with 17 significant digits and round-trip") {
  const double v = 0.1 + 0.2;
  const std::string s = format_double(v);
  CHECK(std::stod(s) == v);
  CHECK(format_double(std::numbers::pi) == "3.1415926535897931");
}
